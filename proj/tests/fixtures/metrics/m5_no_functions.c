/* data only */
int counter = 0;

const char *name = "x";  // label
