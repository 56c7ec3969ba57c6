#include <stdio.h>
#include <stdlib.h>
#include "weakorder_cycles.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    WocFamily *fam = NULL;
    CHECK(woc_family_parse("wn:n=4", &fam) == WOC_STATUS_OK);

    uint64_t count = 0;
    CHECK(woc_family_count(fam, &count) == WOC_STATUS_OK);
    CHECK(count == 75);

    WocCycle *cycle = NULL;
    CHECK(woc_generate_ucycle(fam, &cycle) == WOC_STATUS_OK);
    size_t len = woc_cycle_len(cycle);
    CHECK(len == 75);

    uint32_t *buf = malloc(len * sizeof *buf);
    size_t written = 0;
    CHECK(woc_cycle_symbols(cycle, buf, len, &written) == WOC_STATUS_OK);

    WocVerifySummary summary;
    CHECK(woc_verify(fam, buf, written, woc_cycle_overlap(cycle), &summary) == WOC_STATUS_OK);
    CHECK(summary.ok);

    buf[0] = buf[0] == 0 ? 1 : 0;
    CHECK(woc_verify(fam, buf, written, 3, &summary) == WOC_STATUS_OK);
    CHECK(!summary.ok);
    free(buf);
    woc_cycle_free(cycle);
    woc_family_free(fam);

    WocFamily *fig = NULL;
    CHECK(woc_family_parse("ms:1,2,3,4", &fig) == WOC_STATUS_OK);
    CHECK(woc_generate(fig, 2, &cycle) == WOC_STATUS_NOT_CONNECTED);
    CHECK(cycle == NULL);
    CHECK(woc_last_error_message() != NULL);
    woc_family_free(fig);

    printf("ok\n");
    return 0;
}
