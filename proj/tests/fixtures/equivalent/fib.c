unsigned int fib(unsigned int n) {
  unsigned int a = 0, b = 1;
  for (unsigned int i = 0; i < n % 64; i++) {
    unsigned int t = a + b;
    a = b;
    b = t;
  }
  return a;
}
