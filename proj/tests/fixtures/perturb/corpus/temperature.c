#include <math.h>

/* Converts Celsius to Fahrenheit. */
double to_fahrenheit(double celsius) {
  return celsius * 9.0 / 5.0 + 32.0;
}

// Classifies a reading: -1 cold, 0 mild, 1 hot.
int classify(double celsius, double threshold) {
  if (celsius < threshold) {
    return -1;
  } else {
    if (!(celsius < threshold + 10.0 && celsius == celsius)) {
      return 1;
    }
  }
  return 0;
}
