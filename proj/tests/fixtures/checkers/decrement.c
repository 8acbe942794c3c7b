#include <stdint.h>

uint32_t decrement(uint32_t x) { return x - 1; }
