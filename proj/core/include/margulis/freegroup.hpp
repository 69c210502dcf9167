#pragma once

#include "margulis/isometry.hpp"
#include "margulis/lorentz.hpp"

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace margulis {

/// A freely reduced word. Letter +i is the i-th generator (printed a, b, c, ...),
/// letter -i its inverse (printed A, B, C, ...).
class FreeWord {
public:
    FreeWord() = default;

    const std::vector<int>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    FreeWord inverse() const;
    /// Concatenation followed by free reduction.
    FreeWord operator*(const FreeWord& o) const;

    /// Exponent sums of each generator (length = rank).
    std::vector<int> abelianization(int rank) const;

    std::string to_string() const;

    friend bool operator==(const FreeWord&, const FreeWord&) = default;

private:
    friend FreeWord reduce(const std::vector<int>& letters, int rank);
    std::vector<int> letters_;
};

/// Free reduction. rank > 0 bounds the generator indices; 0 leaves them unbounded.
/// Throws DomainError on letter 0 or an index above rank.
FreeWord reduce(const std::vector<int>& letters, int rank = 0);

/// Parses "aBab" style text (whitespace ignored, "1" for the identity).
FreeWord parse_word(std::string_view text, int rank);

/// Total order on letters: a < A < b < B < ...
int letter_key(int letter);

/// Shortlex order under letter_key.
bool shortlex_less(const FreeWord& x, const FreeWord& y);

/// Cyclic reduction (conjugate with no cancelling first/last pair).
FreeWord cyclic_reduce(const FreeWord& w);

/// Minimal representative of the conjugacy class of w up to inversion.
FreeWord canonical_class(const FreeWord& w);

/// All nontrivial canonical conjugacy-class representatives (up to inversion)
/// of length at most maxLen, in shortlex order.
std::vector<FreeWord> enumerate_classes(int rank, int maxLen);

/// Christoffel word of slope q / p: a primitive element of F2 abelianising to (p, q).
/// Requires p, q >= 0, not both 0, gcd(p, q) = 1.
FreeWord christoffel_primitive(int p, int q);

/// Canonical primitive classes of F2 (up to inversion) of length at most maxLen,
/// in shortlex order. Only rank 2 is supported.
std::vector<FreeWord> primitive_classes(int maxLen);

/// Translational parts u(a_i) of the generators.
struct Cocycle {
    std::vector<MinkVec> uGen;

    int rank() const { return static_cast<int>(uGen.size()); }
    static Cocycle zero(int rank) { return {std::vector<MinkVec>(static_cast<std::size_t>(rank))}; }

    friend Cocycle operator+(const Cocycle& x, const Cocycle& y);
    friend Cocycle operator*(double s, const Cocycle& x);
};

/// The coboundary delta(v): u(a_i) = v - L(a_i) v.
Cocycle coboundary(const std::vector<LinearIso>& gens, const MinkVec& v);

LinearIso eval_linear(const std::vector<LinearIso>& gens, const FreeWord& word);

/// Left fold of the affine generators over the word. Throws DomainError when
/// the word uses a generator index beyond gens.
AffineIso eval_affine(const std::vector<LinearIso>& gens, const Cocycle& u, const FreeWord& word);

}  // namespace margulis
