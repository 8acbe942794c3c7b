#include <stdbool.h>

enum door_state { CLOSED, OPEN, LOCKED };

static int current_state = CLOSED;

/* Applies a command to the door; true when the state changed. */
bool apply_command(int command) {
  int previous = current_state;
  switch (command) {
    case 0:
      if (current_state == OPEN) {
        current_state = CLOSED;
      }
      break;
    case 1:
      if (current_state == CLOSED) {
        current_state = OPEN;
      }
      break;
    case 2:
      if (current_state == CLOSED && !(command < 0)) {
        current_state = LOCKED;
      }
      break;
    default:
      break;
  }
  return previous != current_state;
}
