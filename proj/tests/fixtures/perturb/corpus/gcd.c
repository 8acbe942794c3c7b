// Greatest common divisor of two numbers.
unsigned int gcd_pair(unsigned int first_value, unsigned int second_value) {
  while (second_value != 0) {
    unsigned int remainder = first_value % second_value;
    first_value = second_value;
    second_value = remainder;
  }
  return first_value;
}

/* Least common multiple built on gcd_pair. */
unsigned int lcm_pair(unsigned int a, unsigned int b) {
  if (a == 0 || b == 0) {
    return 0;
  }
  return a / gcd_pair(a, b) * b;
}
