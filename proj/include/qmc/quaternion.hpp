#ifndef QMC_QUATERNION_HPP
#define QMC_QUATERNION_HPP

#include <string>
#include <vector>

#include "qmc/number_field.hpp"

namespace qmc {

/// Is x a square in the completion F_P. x must be nonzero.
bool local_square(NumberField const& F, PrimeIdeal const& P, Element const& x);

enum class LocalSplitting { split, inert, ramified };

std::string to_string(LocalSplitting s);

/// Behaviour of P in F(sqrt(-q)), F totally real, q a rational prime.
LocalSplitting prime_splits_in_sqrt(NumberField const& F, PrimeIdeal const& P, Integer const& q);

/// Totally indefinite quaternion algebra over F, known through its finite
/// ramification set.
struct QuaternionData {
    std::vector<PrimeIdeal> ramified; // canonical order
    Ideal disc_ideal;
    Integer delta = 1;
    Integer delta_prime = 1;
};

/// Validates the set (distinct, even, at least two primes).
QuaternionData make_quaternion(NumberField const& F, std::vector<PrimeIdeal> ramified);

/// Ramified prime given as (p, index among the primes above p).
QuaternionData make_quaternion(NumberField const& F, std::vector<std::pair<Integer, int>> const& ramified);

bool ramified_at(QuaternionData const& B, PrimeIdeal const& P);

/// B splits over F(sqrt(-q)) iff no ramified prime of B splits there.
bool splits_over_sqrt_minus_q(NumberField const& F, QuaternionData const& B, Integer const& q);

/// 1 if B tensor k is a matrix algebra at every place above Ram(B), else 2.
/// `embeddings` must be all [F:Q] embeddings of F into k.
int compute_u(NumberField const& F, QuaternionData const& B, NumberField const& k,
              std::vector<EmbeddingIntoK> const& embeddings);

/// Hilbert symbol (a, b)_p over Q; p = 0 is the real place.
int hilbert_symbol(Integer const& a, Integer const& b, Integer const& p);

/// Finite ramification of (a, b)_Q.
std::vector<Integer> ramification_over_q(Integer const& a, Integer const& b, FactorLimits const& limits = {});

} // namespace qmc

#endif // QMC_QUATERNION_HPP
