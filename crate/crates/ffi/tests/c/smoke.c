#include <stdio.h>
#include <string.h>

#include "tauq.h"

int main(void) {
    TauqQuiver *q = NULL;
    if (tauq_corpus_load("A2", &q) != TAUQ_STATUS_OK) {
        fprintf(stderr, "load: %s\n", tauq_last_error());
        return 1;
    }
    char *json = NULL;
    if (tauq_classify_json(q, 0, &json) != TAUQ_STATUS_OK) {
        fprintf(stderr, "classify: %s\n", tauq_last_error());
        return 1;
    }
    int ok = strstr(json, "\"consistent\":true") != NULL;
    tauq_string_free(json);

    TauqStatus s = tauq_chain_json(q, TAUQ_CHAIN_KIND_THETA, "nope", 0, &json);
    ok = ok && s == TAUQ_STATUS_UNKNOWN_VERTEX && tauq_last_error() != NULL;
    tauq_quiver_free(q);

    printf("%s %zu\n", ok ? "ok" : "bad", strlen(tauq_version()));
    return ok ? 0 : 1;
}
