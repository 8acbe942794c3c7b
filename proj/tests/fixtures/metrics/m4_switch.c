// switch fixture
static int table(int k) {
  switch (k) {
    case 0:
      return 10;
    case 1:
      return 20;
    default:
      return 0;
  }
}

int twice(int k) {
  // loop twice
  int t = 0;
  do {
    t += table(k);
  } while (t < 20);
  return t;
}
