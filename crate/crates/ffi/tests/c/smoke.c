#include <stdio.h>
#include <string.h>

#include "veechlab.h"

#define CHECK(x)                                                   \
    do {                                                           \
        if (!(x)) {                                                \
            fprintf(stderr, "line %d: %s\n", __LINE__, #x);        \
            return 1;                                              \
        }                                                          \
    } while (0)

int main(void) {
    VlCover *cover = NULL;
    VlCertificate *cert = NULL;
    VlVerdict verdict;
    char *json = NULL;
    size_t d = 0;

    CHECK(vl_cover_standard(7, 3, &cover) == VL_STATUS_OK);
    CHECK(vl_cover_degree(cover, &d) == VL_STATUS_OK && d == 3);
    CHECK(vl_verify(cover, &cert) == VL_STATUS_OK);
    CHECK(vl_certificate_verdict(cert, &verdict) == VL_STATUS_OK);
    CHECK(verdict == VL_VERDICT_PASS);
    CHECK(vl_certificate_to_json(cert, &json) == VL_STATUS_OK);
    CHECK(strstr(json, "full_theorem") != NULL);
    vl_string_free(json);
    vl_certificate_free(cert);
    vl_cover_free(cover);

    CHECK(vl_cover_standard(6, 3, &cover) == VL_STATUS_INVALID_ARGUMENT);
    CHECK(vl_last_error() != NULL);
    printf("ok %s\n", vl_version());
    return 0;
}
