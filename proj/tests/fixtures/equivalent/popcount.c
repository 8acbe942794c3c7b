int popcount(unsigned int x) {
  int n = 0;
  while (x) {
    n += x & 1u;
    x >>= 1;
  }
  return n;
}
