#include "liep/howell.hpp"

#include <algorithm>

namespace liep {

namespace {

u64 pow_u64(u64 b, int e) {
    u64 r = 1;
    while (e-- > 0) r *= b;
    return r;
}

u64 mulmod(u64 a, u64 b, u64 q) { return static_cast<u64>((u128)a * b % q); }

u64 powmod(u64 b, u64 e, u64 q) {
    u64 r = 1;
    b %= q;
    while (e) {
        if (e & 1) r = mulmod(r, b, q);
        b = mulmod(b, b, q);
        e >>= 1;
    }
    return r;
}

} // namespace

HowellSpan::HowellSpan(u64 p, int e, int n) : p_(p), e_(e), n_(n), q_(pow_u64(p, e)) {}

void HowellSpan::add_generators(const std::vector<std::vector<u64>>& vs) {
    for (const auto& v : vs) add_generator(v);
}

void HowellSpan::add_generator(std::vector<u64> v) {
    for (auto& x : v) x %= q_;
    insert(std::move(v));
}

void HowellSpan::insert(std::vector<u64> first) {
    std::vector<std::vector<u64>> work;
    work.push_back(std::move(first));
    int guard = 0;
    while (!work.empty()) {
        if (++guard > 100000) throw BoundViolation("Howell elimination did not terminate");
        std::vector<u64> v = std::move(work.back());
        work.pop_back();

        // Reduce against current pivots in column order; a smaller-valuation
        // entry at a pivot column displaces that pivot.
        size_t r = 0;
        int col = -1;
        while (true) {
            // leftmost nonzero column of v
            col = -1;
            for (int c = 0; c < n_; ++c)
                if (v[static_cast<size_t>(c)] != 0) { col = c; break; }
            if (col < 0) break;

            while (r < rows_.size() && pivot_col_[r] < col) ++r;
            if (r < rows_.size() && pivot_col_[r] == col) {
                u64 entry = v[static_cast<size_t>(col)];
                int bv = 0;
                u64 ew = entry;
                while (ew % p_ == 0) { ew /= p_; ++bv; }
                if (bv >= pivot_val_[r]) {
                    u64 mult = entry / pow_u64(p_, pivot_val_[r]);
                    for (int c = col; c < n_; ++c) {
                        u64 s = mulmod(mult, rows_[r][static_cast<size_t>(c)], q_);
                        u64& t = v[static_cast<size_t>(c)];
                        t = t >= s ? t - s : t + (q_ - s);
                    }
                    continue; // v[col] is now zero; rescan
                }
                // displace: v becomes the pivot for this column
                std::swap(v, rows_[r]);
                // normalize new pivot and requeue the displaced row plus the tail
                u64 piv = rows_[r][static_cast<size_t>(col)];
                int a = 0;
                u64 unit = piv;
                while (unit % p_ == 0) { unit /= p_; ++a; }
                u64 inv = powmod(unit, q_ / p_ * (p_ - 1) - 1, q_);
                for (auto& x : rows_[r]) x = mulmod(x, inv, q_);
                pivot_val_[r] = a;
                work.push_back(std::move(v));
                for (size_t t = rows_.size(); t-- > r + 1;) {
                    work.push_back(std::move(rows_[t]));
                    rows_.pop_back();
                    pivot_col_.pop_back();
                    pivot_val_.pop_back();
                }
                if (a > 0) {
                    std::vector<u64> shadow(rows_[r]);
                    u64 f = pow_u64(p_, e_ - a);
                    for (auto& x : shadow) x = mulmod(x, f, q_);
                    work.push_back(std::move(shadow));
                }
                break;
            }

            // new pivot column
            u64 piv = v[static_cast<size_t>(col)];
            int a = 0;
            u64 unit = piv;
            while (unit % p_ == 0) { unit /= p_; ++a; }
            u64 inv = powmod(unit, q_ / p_ * (p_ - 1) - 1, q_);
            for (auto& x : v) x = mulmod(x, inv, q_);
            rows_.insert(rows_.begin() + static_cast<long>(r), v);
            pivot_col_.insert(pivot_col_.begin() + static_cast<long>(r), col);
            pivot_val_.insert(pivot_val_.begin() + static_cast<long>(r), a);
            // tail rows were never reduced against this pivot; requeue them
            for (size_t t = rows_.size(); t-- > r + 1;) {
                work.push_back(std::move(rows_[t]));
                rows_.pop_back();
                pivot_col_.pop_back();
                pivot_val_.pop_back();
            }
            if (a > 0) {
                std::vector<u64> shadow(rows_[r]);
                u64 f = pow_u64(p_, e_ - a);
                for (auto& x : shadow) x = mulmod(x, f, q_);
                work.push_back(std::move(shadow));
            }
            break;
        }
    }
}

void HowellSpan::reduce_row(std::vector<u64>& v) const {
    for (size_t r = 0; r < rows_.size(); ++r) {
        int c = pivot_col_[r];
        u64 entry = v[static_cast<size_t>(c)];
        if (entry == 0) continue;
        int bv = 0;
        u64 ew = entry;
        while (ew % p_ == 0) { ew /= p_; ++bv; }
        if (bv < pivot_val_[r]) continue;
        u64 mult = entry / pow_u64(p_, pivot_val_[r]);
        for (int k = c; k < n_; ++k) {
            u64 s = mulmod(mult, rows_[r][static_cast<size_t>(k)], q_);
            u64& t = v[static_cast<size_t>(k)];
            t = t >= s ? t - s : t + (q_ - s);
        }
    }
}

bool HowellSpan::contains(std::vector<u64> v) const {
    for (auto& x : v) x %= q_;
    reduce_row(v);
    return std::all_of(v.begin(), v.end(), [](u64 x) { return x == 0; });
}

long HowellSpan::order_exponent() const {
    long s = 0;
    for (size_t r = 0; r < rows_.size(); ++r) s += e_ - pivot_val_[r];
    return s;
}

} // namespace liep
