int classify(int x, int n) {
  int s = 0;
  if (x > 0 && n > 0) {
    for (int i = 0; i < n; i++) {
      s += i;
    }
  } else if (x < 0 || n < 0) {
    s = -1;
  }
  while (s > 100) s /= 2;
  return s > 50 ? 1 : 0;
}
