int bump(int x) { return x + 1; }
