#pragma once

// Test-side oracles, deliberately independent of the library internals: own
// binomials, own power-basis reduction, own linear solver. Used to cross-check
// the valuation formula against ideal membership decided by solving
// sum_n x_n kappa^{t+n} = a over Z/p^N (Smith-style elimination, which is a
// complete solvability test over this local ring).

#include <cstdint>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

struct Ring {
    u64 p;
    int n; // coefficients mod p^n
    int d; // p - 1
    u64 q; // p^n
    std::vector<u64> fold; // kappa^d = sum fold[j] kappa^j (mod q)

    Ring(u64 p_, int n_) : p(p_), n(n_), d(static_cast<int>(p_ - 1)) {
        q = 1;
        for (int t = 0; t < n; ++t) q *= p;
        // Pascal's triangle for binom(p, k)
        std::vector<u64> b(p + 1, 0);
        b[0] = 1;
        for (u64 row = 1; row <= p; ++row)
            for (u64 k = row; k >= 1; --k) b[k] += b[k - 1];
        fold.assign(d, 0);
        for (int j = 0; j < d; ++j) fold[j] = (q - b[j + 1] % q) % q;
    }

    u64 mul(u64 a, u64 b) const { return static_cast<u64>((u128)a * b % q); }
    u64 add(u64 a, u64 b) const { u64 s = a + b; return s >= q || s < a ? s - q : s; }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + (q - b); }

    int valp(u64 c) const {
        if (c == 0) return n;
        int v = 0;
        while (c % p == 0) { c /= p; ++v; }
        return v;
    }

    u64 inv_unit(u64 u) const { // Euler
        u64 e = q / p * (p - 1) - 1, r = 1, b = u % q;
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }

    // kappa^m in the power basis, m >= 0.
    std::vector<u64> kappa_power(long m) const {
        std::vector<u64> v(d, 0);
        v[0] = 1;
        for (long s = 0; s < m; ++s) {
            u64 top = v[static_cast<size_t>(d - 1)];
            for (int j = d - 1; j >= 1; --j) v[j] = v[j - 1];
            v[0] = 0;
            if (top)
                for (int j = 0; j < d; ++j) v[j] = add(v[j], mul(top, fold[j]));
        }
        return v;
    }
};

// Does G x = a have a solution over Z/p^N? G given column-wise.
inline bool solvable(const Ring& R, std::vector<std::vector<u64>> cols, std::vector<u64> a) {
    const int d = R.d;
    // Work on the d x d matrix M[r][c] = cols[c][r], eliminating with row and
    // column operations (both preserve solvability; row ops also act on a).
    std::vector<std::vector<u64>> M(d, std::vector<u64>(d));
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) M[r][c] = cols[static_cast<size_t>(c)][static_cast<size_t>(r)];

    int k = 0;
    for (; k < d; ++k) {
        int br = -1, bc = -1, bv = R.n + 1;
        for (int r = k; r < d; ++r)
            for (int c = k; c < d; ++c) {
                int v = R.valp(M[r][c]);
                if (v < bv) { bv = v; br = r; bc = c; }
            }
        if (bv >= R.n) break; // remaining block is zero
        std::swap(M[k], M[br]);
        std::swap(a[static_cast<size_t>(k)], a[static_cast<size_t>(br)]);
        for (int r = 0; r < d; ++r) std::swap(M[r][k], M[r][bc]);
        u64 unit = M[k][k];
        for (int t = 0; t < bv; ++t) unit /= R.p;
        u64 inv = R.inv_unit(unit);
        for (int c = k; c < d; ++c) M[k][c] = R.mul(M[k][c], inv); // pivot -> p^bv
        a[static_cast<size_t>(k)] = R.mul(a[static_cast<size_t>(k)], inv);
        u64 piv = M[k][k];
        for (int r = k + 1; r < d; ++r) {
            if (M[r][k] == 0) continue;
            u64 f = M[r][k] / piv; // exact: valp >= bv by pivot minimality
            for (int c = k; c < d; ++c) M[r][c] = R.sub(M[r][c], R.mul(f, M[k][c]));
            a[static_cast<size_t>(r)] = R.sub(a[static_cast<size_t>(r)], R.mul(f, a[static_cast<size_t>(k)]));
        }
        for (int c = k + 1; c < d; ++c) { // clear the pivot row
            if (M[k][c] == 0) continue;
            u64 f = M[k][c] / piv;
            for (int r = k; r < d; ++r) M[r][c] = R.sub(M[r][c], R.mul(f, M[r][k]));
        }
    }
    // diagonal system: p^{v_r} x_r = a_r solvable iff valp(a_r) >= v_r;
    // rows past the rank need a_r = 0.
    for (int r = 0; r < k; ++r)
        if (R.valp(a[static_cast<size_t>(r)]) < R.valp(M[r][r])) return false;
    for (int r = k; r < d; ++r)
        if (a[static_cast<size_t>(r)] != 0) return false;
    return true;
}

// a (power-basis coefficients mod p^N) in kappa^t O?
inline bool in_pideal(const Ring& R, const std::vector<u64>& a, long t) {
    if (t < 0) return true;
    std::vector<std::vector<u64>> cols;
    for (int nn = 0; nn < R.d; ++nn) cols.push_back(R.kappa_power(t + nn));
    return solvable(R, std::move(cols), a);
}

} // namespace oracle
