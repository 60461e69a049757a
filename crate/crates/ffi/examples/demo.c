/* Minimal consumer of the C interface: build a carrier, add two equal
 * tangibles, and print the resulting ghost. */
#include <stdio.h>
#include "tsys.h"

int main(void) {
  TsysSystem *sys = NULL;
  if (tsys_system_new("\"supertropical\"", &sys) != TSYS_OK) {
    fprintf(stderr, "carrier: %s\n", tsys_last_error());
    return 1;
  }
  char *out = NULL;
  const char *three = "{\"kind\":\"tangible\",\"value\":\"3\"}";
  if (tsys_elem_add(sys, three, three, &out) != TSYS_OK) {
    fprintf(stderr, "add: %s\n", tsys_last_error());
    tsys_system_free(sys);
    return 1;
  }
  printf("3 + 3 = %s\n", out);
  tsys_string_free(out);
  tsys_system_free(sys);
  return 0;
}
