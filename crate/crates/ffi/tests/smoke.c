#include <stdio.h>

#include "popswitch.h"

int main(void) {
    char *s = NULL;
    PsElement *p = NULL;
    if (ps_quantum_int(3, &s) != PS_STATUS_OK) return 1;
    printf("%s\n", s);
    ps_string_free(s);
    if (ps_jones_wenzl(2, &p) != PS_STATUS_OK) return 1;
    if (ps_element_closure(p, &s) != PS_STATUS_OK) return 1;
    printf("%s\n", s);
    ps_string_free(s);
    ps_element_free(p);
    PsStatus st = ps_decompose(7, false, &s);
    printf("status %d\n", (int)st);
    return ps_last_error() == NULL;
}
