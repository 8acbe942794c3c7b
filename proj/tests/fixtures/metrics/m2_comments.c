/* header comment */
#include <stdint.h>

// adds
int add(int a, int b) {
  return a + b; /* trailing */
}

/*
 * block
 */
int neg(int x) { return -x; }
