unsigned int gcd(unsigned int a, unsigned int b) {
  while (b != 0) {
    unsigned int t = a % b;
    a = b;
    b = t;
  }
  return a;
}
