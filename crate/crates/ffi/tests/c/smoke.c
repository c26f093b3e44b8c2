#include <math.h>
#include <stdio.h>
#include <string.h>

#include "homsim.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "check failed line %d: %s\n", __LINE__, #cond); \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    HomsimGeometry *g = NULL;
    double p = -1.0;
    HomsimQuadrature q;
    char *csv = NULL;

    CHECK(homsim_geometry_new(2, 3, 2, 3, 1, 1, 1, 1, &g) == HOMSIM_STATUS_OK);
    CHECK(homsim_joint_probability(g, 4.5, 5.5, &p) == HOMSIM_STATUS_OK);
    CHECK(p < 1e-12);
    CHECK(homsim_hom_probability(g, &p) == HOMSIM_STATUS_OK);
    CHECK(homsim_oracle_hom(g, 0.0, &q) == HOMSIM_STATUS_OK);
    CHECK(fabs(q.value - p) < 1e-9);

    CHECK(homsim_geometry_set_splitter(g, 0.6, 0.8) == HOMSIM_STATUS_OK);
    CHECK(homsim_hom_probability(g, &p) == HOMSIM_STATUS_UNBALANCED_SPLITTER);
    CHECK(homsim_last_error() != NULL);
    homsim_geometry_free(g);

    CHECK(homsim_geometry_new(0, 0, 0, 0, -1, 1, 1, 1, &g) == HOMSIM_STATUS_DOMAIN);
    CHECK(strstr(homsim_last_error(), "delta_a") != NULL);

    CHECK(fabs(homsim_erf(1.0) - 0.8427007929497149) < 1e-16);

    CHECK(homsim_run_scenario("quantity = \"hom\"\n[geometry]\nt_a = 0.0\nt_b = 0.0\nt_c = 1.0\n"
                              "t_d = 1.0\ndelta_a = 1.0\ndelta_b = 1.0\ndelta_c = 1.0\ndelta_d = 1.0\n",
                              1, &csv) == HOMSIM_STATUS_OK);
    CHECK(strstr(csv, "\nhom\n0\n") != NULL);
    homsim_string_free(csv);

    puts("ok");
    return 0;
}
