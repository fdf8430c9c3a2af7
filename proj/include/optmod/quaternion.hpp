#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "optmod/jacobi.hpp"
#include "optmod/rational.hpp"
#include "optmod/short_vectors.hpp"

// Definite quaternion algebras ramified at {N, oo}, their maximal orders and
// left ideal classes, and the theta series feeding the cusp series phi_N.
namespace optmod::quaternion {

/// Basis 1, i, j, k with i^2 = a, j^2 = b, k = ij = -ji.
struct QuaternionAlgebra {
    std::int64_t a = -1;
    std::int64_t b = -1;
};

/// Hilbert symbol (a, b)_p; p = 0 denotes the infinite place.
int hilbert_symbol(std::int64_t a, std::int64_t b, std::int64_t p);

/// Places where (a, b) ramifies; 0 stands for infinity. Ascending, 0 first.
std::vector<std::int64_t> ramified_places(const QuaternionAlgebra& alg);

QuaternionAlgebra ramified_algebra(std::int64_t n);

using Quat = std::array<Rational, 4>;

Quat mul(const QuaternionAlgebra& alg, const Quat& x, const Quat& y);
Quat conj(const Quat& x);
Rational nrd(const QuaternionAlgebra& alg, const Quat& x);
Rational trd(const Quat& x);
/// trd(x * conj(y)), the polar form of 2 nrd.
Rational pair(const QuaternionAlgebra& alg, const Quat& x, const Quat& y);

/// Z-lattice in the algebra, kept in Hermite normal form so that equal
/// lattices compare equal.
class Lattice {
public:
    Lattice() = default;
    static Lattice from_generators(const std::vector<Quat>& gens);

    const std::vector<Quat>& basis() const { return basis_; }
    std::size_t rank() const { return basis_.size(); }
    bool contains(const Quat& x) const;
    Lattice conjugate() const;
    Lattice scaled(const Rational& s) const;

    friend bool operator==(const Lattice& x, const Lattice& y) { return x.den_ == y.den_ && x.rows_ == y.rows_; }

private:
    std::vector<std::array<Integer, 4>> rows_;  // basis = rows_ / den_
    Integer den_ = 1;
    std::vector<Quat> basis_;
};

/// Z-span of all products x*y.
Lattice product(const QuaternionAlgebra& alg, const Lattice& x, const Lattice& y);

/// Gram matrix of trd(x conj(y)) / scale on the lattice basis; throws
/// InternalError when it is not integral.
lattice::GramMatrix gram(const QuaternionAlgebra& alg, const Lattice& l, const Rational& scale = 1);

struct QuatOrder {
    QuaternionAlgebra algebra;
    Lattice lattice;
    lattice::GramMatrix gram;
    std::int64_t w = 1;  // half the number of units
};

/// Validates order axioms and reduced discriminant N; throws InternalError.
QuatOrder make_order(const QuaternionAlgebra& alg, const Lattice& l, std::int64_t n);

QuatOrder maximal_order(const QuaternionAlgebra& alg, std::int64_t n);

struct IdealClass {
    Lattice ideal;        // left ideal of the base order
    Integer norm;         // reduced norm of the ideal
    QuatOrder right_order;
};

struct IdealClassSet {
    std::int64_t level = 0;
    QuaternionAlgebra algebra;
    std::vector<IdealClass> classes;  // classes[0] is the base order itself
    Rational mass;

    std::vector<std::int64_t> weights() const;
};

struct ClassSearchLimits {
    std::int64_t max_level = 50;
    std::size_t max_classes = 64;
};

IdealClassSet ideal_classes(std::int64_t n, const ClassSearchLimits& limits = {});

/// I ~ J as left ideals: conj(I) J has an element of norm nrd(I) nrd(J).
bool equivalent(const QuaternionAlgebra& alg, const Lattice& i, const Integer& ni, const Lattice& j,
                const Integer& nj);

struct ThetaTable {
    std::int64_t prec = 0;
    std::vector<std::int64_t> coeffs;  // coeffs[n] for 0 <= n <= prec
};

/// Trace-zero vectors of Z + 2R counted by norm.
ThetaTable theta_trace_zero(const QuatOrder& order, std::int64_t prec);

/// Weighted theta sum_i (dCoh / w_i) * theta_i / 2, exact.
std::vector<Rational> theta_xE(const IdealClassSet& set, std::int64_t prec);

jacobi::DiscSeries build_phiN(std::int64_t n, std::int64_t dmax);
jacobi::DiscSeries build_phiN(const IdealClassSet& set, std::int64_t dmax);

/// dCoh (SCoh_N - (N-1)/24) = phi_N mod nCoh.
jacobi::CongruenceCertificate verify_lemma_congruence(std::int64_t n, std::int64_t dmax);

}  // namespace optmod::quaternion
