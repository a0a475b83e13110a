#include <stdio.h>
#include "kquiver.h"

int main(void) {
    KqCartan *c = NULL;
    if (kq_cartan_from_type("A3", &c) != KQ_STATUS_OK) {
        fprintf(stderr, "%s\n", kq_last_error_message());
        return 1;
    }
    int64_t w[3] = {1, 0, 0};
    KqModule *m = NULL;
    size_t total = 0;
    if (kq_module_build(c, w, 3, -1, &m) != KQ_STATUS_OK || kq_module_total_dim(m, &total) != KQ_STATUS_OK) {
        fprintf(stderr, "%s\n", kq_last_error_message());
        return 1;
    }
    printf("%zu\n", total);
    kq_module_free(m);
    kq_cartan_free(c);
    return total == 4 ? 0 : 1;
}
