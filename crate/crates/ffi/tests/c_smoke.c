#include <stdio.h>
#include <string.h>
#include "shadowtrace.h"

int main(void) {
    StWorkspace *ws = NULL;
    if (st_workspace_new("Q", &ws) != ST_STATUS_OK) return 10;
    StAlgebra *a = NULL;
    if (st_workspace_algebra(ws, "QS3", &a) != ST_STATUS_OK) return 11;
    StBimodule *u = NULL;
    if (st_algebra_unit_bimodule(a, &u) != ST_STATUS_OK) return 12;
    size_t dims[3], n = 0;
    if (st_hh_dims(u, 2, dims, 3, &n) != ST_STATUS_OK) return 13;
    printf("HH: %zu, %zu, %zu\n", dims[0], dims[1], dims[2]);
    if (n != 3 || dims[0] != 3 || dims[1] != 0 || dims[2] != 0) return 14;
    StAlgebra *bad = NULL;
    if (st_workspace_algebra(ws, "nope", &bad) != ST_STATUS_INPUT || st_last_error() == NULL) return 15;
    st_bimodule_free(u);
    st_algebra_free(a);
    st_workspace_free(ws);
    return 0;
}
