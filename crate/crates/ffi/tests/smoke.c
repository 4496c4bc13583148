#include <stdio.h>
#include "inplace_poly.h"

static int expect(const char *what, const uint64_t *got, const uint64_t *want, size_t n) {
    for (size_t i = 0; i < n; i++) {
        if (got[i] != want[i]) {
            printf("%s: mismatch at %zu\n", what, i);
            return 1;
        }
    }
    return 0;
}

int main(void) {
    IpContext *ctx = NULL;
    if (ip_context_new(7, 0, &ctx) != IP_STATUS_OK) return 2;
    uint64_t a[] = {1, 2, 0, 1}, b[] = {1, 0, 1}, r[2] = {0, 0};
    int bad = 0;
    bad |= ip_iper(ctx, r, a, 4, b, 3) != IP_STATUS_OK;
    bad |= expect("iper", r, (uint64_t[]){1, 1}, 2);
    bad |= ip_oper(ctx, a, 4, b, 3) != IP_STATUS_OK;
    bad |= expect("oper", a, (uint64_t[]){1, 1, 0, 1}, 4);
    bad |= ip_oper_inv(ctx, a, 4, b, 3) != IP_STATUS_OK;
    bad |= expect("oper_inv", a, (uint64_t[]){1, 2, 0, 1}, 4);
    bad |= ip_iper(ctx, r, a, 4, a, 3) != IP_STATUS_ALIASING;
    ip_context_free(ctx);

    IpContext *bad_ctx = NULL;
    bad |= ip_context_new(9, 0, &bad_ctx) != IP_STATUS_NOT_PRIME;
    printf("%s\n", ip_status_str(IP_STATUS_ALIASING));
    return bad;
}
