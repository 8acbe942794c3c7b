void noop(void) {}
