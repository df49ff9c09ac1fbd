#include <stdio.h>
#include <string.h>

#include "vcsp.h"

int main(void) {
    const char *text = "vcsp 2\ndom 1 2\ndom 2 2\nunary 1 0 3\nunary 2 0 1\nbinary 1 2 1 1 1/2\n";
    VcspProblem *p = NULL;
    if (vcsp_parse(text, &p) != VCSP_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", vcsp_last_error());
        return 1;
    }
    VcspSolution *s = NULL;
    if (vcsp_solve(p, VCSP_METHOD_FLOW, 0, &s) != VCSP_STATUS_OK) {
        fprintf(stderr, "solve: %s\n", vcsp_last_error());
        return 1;
    }
    char *cost = vcsp_solution_cost(s);
    size_t v0 = 9, v1 = 9;
    vcsp_solution_value(s, 0, &v0);
    vcsp_solution_value(s, 1, &v1);
    printf("%s %zu %zu\n", cost, v0, v1);
    vcsp_string_free(cost);
    vcsp_solution_free(s);
    vcsp_free(p);
    return vcsp_parse("vcsp 1\n", &p) == VCSP_STATUS_PARSE ? 0 : 1;
}
