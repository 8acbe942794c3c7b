int counter;

int tally(int x) {
  if (x > 1000 || x < -1000) return counter;
  counter += x;
  return counter;
}
