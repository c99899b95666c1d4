#pragma once

// Shared builders and the fixed corpus of metric groups used by the
// property-style suites and the acceptance gate.

#include <cstdint>
#include <vector>

#include "metriq/metric.hpp"

namespace corpus {

using metriq::MetricGroup;

// q(x) = zeta_{2n}^{a x^2} on Z_n.  Well defined (hence valid) iff a*n is
// even; callers below only use such pairs.
inline MetricGroup cyclic_form(std::int64_t n, std::int64_t a) {
    std::int64_t mod = 2 * n;
    std::vector<std::int64_t> q(static_cast<std::size_t>(n));
    for (std::int64_t x = 0; x < n; ++x)
        q[static_cast<std::size_t>(x)] = (((a * x % mod) * x) % mod + mod) % mod;
    return metriq::make_metric_group({n}, q);
}

// q((x,y)) = zeta_n^{x y} on Z_n x Z_n; nondegenerate with trivial Witt class.
inline MetricGroup hyperbolic_form(std::int64_t n) {
    std::int64_t mod = 2 * n;
    std::vector<std::int64_t> q(static_cast<std::size_t>(n * n));
    for (std::int64_t x = 0; x < n; ++x)
        for (std::int64_t y = 0; y < n; ++y)
            q[static_cast<std::size_t>(x * n + y)] = (2 * x * y) % mod;
    return metriq::make_metric_group({n, n}, q);
}

// Orthogonal direct sum; exponents rescaled into the combined modulus.
inline MetricGroup direct_sum(const MetricGroup& a, const MetricGroup& b) {
    std::vector<std::int64_t> orders = a.group.orders;
    orders.insert(orders.end(), b.group.orders.begin(), b.group.orders.end());
    std::int64_t mod = metriq::form_modulus(orders);
    std::int64_t na = a.group.size();
    std::int64_t nb = b.group.size();
    std::vector<std::int64_t> q;
    q.reserve(static_cast<std::size_t>(na * nb));
    for (std::int64_t i = 0; i < na; ++i)
        for (std::int64_t j = 0; j < nb; ++j)
            q.push_back((a.q_exp[static_cast<std::size_t>(i)] * (mod / a.modulus) +
                         b.q_exp[static_cast<std::size_t>(j)] * (mod / b.modulus)) %
                        mod);
    return metriq::make_metric_group(orders, q);
}

// >= 20 validated metric groups of order <= 64: cyclic forms across odd/even
// orders, hyperbolic planes, degenerate cases, and mixed direct sums.
inline std::vector<MetricGroup> metric_corpus() {
    std::vector<MetricGroup> v;
    v.push_back(cyclic_form(1, 0));
    v.push_back(cyclic_form(2, 1));  // q(1) = i
    v.push_back(cyclic_form(2, 3));  // q(1) = -i
    v.push_back(cyclic_form(2, 2));  // q(1) = -1, degenerate
    v.push_back(cyclic_form(3, 2));
    v.push_back(cyclic_form(3, 4));
    v.push_back(cyclic_form(4, 1));
    v.push_back(cyclic_form(4, 3));
    v.push_back(cyclic_form(4, 2));  // q(g) = i^{g^2}, degenerate
    v.push_back(cyclic_form(5, 2));
    v.push_back(cyclic_form(6, 2));  // radical {0, 3}
    v.push_back(cyclic_form(7, 2));
    v.push_back(cyclic_form(8, 1));
    v.push_back(cyclic_form(9, 2));
    v.push_back(cyclic_form(12, 1));
    v.push_back(cyclic_form(16, 1));
    v.push_back(hyperbolic_form(2));
    v.push_back(hyperbolic_form(3));
    v.push_back(hyperbolic_form(4));
    v.push_back(hyperbolic_form(6));
    v.push_back(hyperbolic_form(8));
    v.push_back(direct_sum(cyclic_form(2, 1), cyclic_form(3, 2)));
    v.push_back(direct_sum(cyclic_form(2, 1), cyclic_form(2, 3)));
    v.push_back(direct_sum(cyclic_form(4, 1), cyclic_form(4, 3)));
    v.push_back(direct_sum(hyperbolic_form(2), cyclic_form(3, 2)));
    v.push_back(direct_sum(cyclic_form(2, 1), direct_sum(cyclic_form(2, 1), cyclic_form(2, 1))));
    v.push_back(direct_sum(cyclic_form(2, 1), cyclic_form(4, 1)));
    v.push_back(direct_sum(cyclic_form(2, 1), hyperbolic_form(4))); // order 32, mixed rank
    return v;
}

} // namespace corpus
