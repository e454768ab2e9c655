#pragma once

#include <vector>

#include "liep/padic.hpp"

namespace liep {

/// Canonical span of row vectors over Z/p^E. Rows are kept in Howell normal
/// form, which makes membership decidable by greedy reduction and the span
/// order a product over pivots. Sizes here are tiny (n <= 30), so the
/// elimination is unapologetically quadratic.
class HowellSpan {
public:
    HowellSpan(u64 p, int e, int n);

    void add_generator(std::vector<u64> v);
    void add_generators(const std::vector<std::vector<u64>>& vs);

    bool contains(std::vector<u64> v) const;
    bool is_zero() const { return rows_.empty(); }

    /// log_p of the span order.
    long order_exponent() const;

    const std::vector<std::vector<u64>>& rows() const { return rows_; }

    u64 modulus() const { return q_; }
    int exponent() const { return e_; }

private:
    void reduce_row(std::vector<u64>& v) const;
    void insert(std::vector<u64> v);

    u64 p_;
    int e_;
    int n_;
    u64 q_; // p^e
    std::vector<std::vector<u64>> rows_; // pivot column strictly increasing
    std::vector<int> pivot_col_;
    std::vector<int> pivot_val_; // pivot entry is p^val
};

} // namespace liep
