#pragma once

#include <span>

#include "rforest/algebra.hpp"
#include "rforest/forest.hpp"

namespace rforest {

/// (1+lambda)^s - 1: generating weight of picking a nonempty subset of an
/// s-element set with one lambda-weighted edge per chosen vertex.
MPoly rho_lambda(int set_size);

/// 2^s - 1, the lambda = 1 specialization of rho_lambda.
BigInt rho_count(int set_size);

/// Closed-form count of admissible graphs on sets of the given sizes:
/// |V_1| * (sum of sizes)^(m-2) * prod_{i>=2} (2^{|V_i|} - 1), with the
/// m = 1 case equal to 1.
BigInt n_m_closed(std::span<const int> sizes);

/// Closed-form weighted census with `extras` additional single vertices.
/// For extras = 0 the degenerate exponents collapse to
/// |V_1| * prod rho_i(lambda) * |V|^(m-2) (and to 1 when also m = 1).
CensusPolynomial q_closed(std::span<const int> sizes, int extras);

/// Closed-form census restricted to graphs with no edge between two
/// different sets. Defined for extras >= 1.
CensusPolynomial qtilde_closed(std::span<const int> sizes, int extras);

enum class ExpansionMode { Memoized, Literal };

/// The restricted census as its nested sum over subdivisions of the sets
/// 2..m, partitions of the extras, and injective block assignments.
/// Memoized mode collapses both partition sums to block-size shapes with
/// multinomial counts; Literal mode walks every term of the nested sums.
/// Requires m >= 2 and extras >= 1.
CensusPolynomial qtilde_expansion(std::span<const int> sizes, int extras,
                                  ExpansionMode mode = ExpansionMode::Memoized);

/// Rebuilds the unrestricted census from the restricted one:
/// sum_{q=1..m} C(m-1,q-1) * |V|^(m-q) * n^(q-1) times the common
/// lambda|V_1| * prod rho_i * (lambda|V| + n a)^(n-1) factor. Must equal
/// q_closed wherever both are defined (extras >= 1).
CensusPolynomial q_from_qtilde(std::span<const int> sizes, int extras);

}  // namespace rforest
