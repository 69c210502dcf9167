#include "margulis/freegroup.hpp"

#include "margulis/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fmt/format.h>
#include <numeric>

namespace margulis {

FreeWord reduce(const std::vector<int>& letters, int rank) {
    FreeWord out;
    auto& v = out.letters_;
    v.reserve(letters.size());
    for (int x : letters) {
        if (x == 0 || (rank > 0 && std::abs(x) > rank))
            throw DomainError(fmt::format("invalid generator index {} for rank {}", x, rank));
        if (!v.empty() && v.back() == -x) v.pop_back();
        else v.push_back(x);
    }
    return out;
}

FreeWord FreeWord::inverse() const {
    std::vector<int> inv(letters_.rbegin(), letters_.rend());
    for (int& x : inv) x = -x;
    return reduce(inv);
}

FreeWord FreeWord::operator*(const FreeWord& o) const {
    std::vector<int> cat = letters_;
    cat.insert(cat.end(), o.letters_.begin(), o.letters_.end());
    return reduce(cat);
}

std::vector<int> FreeWord::abelianization(int rank) const {
    std::vector<int> e(static_cast<std::size_t>(rank), 0);
    for (int x : letters_) {
        const int i = std::abs(x) - 1;
        if (i < rank) e[static_cast<std::size_t>(i)] += x > 0 ? 1 : -1;
    }
    return e;
}

std::string FreeWord::to_string() const {
    if (letters_.empty()) return "1";
    std::string s;
    for (int x : letters_) {
        const char base = x > 0 ? 'a' : 'A';
        s.push_back(static_cast<char>(base + std::abs(x) - 1));
    }
    return s;
}

FreeWord parse_word(std::string_view text, int rank) {
    std::vector<int> letters;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == '1') continue;
        if (c >= 'a' && c <= 'z') letters.push_back(c - 'a' + 1);
        else if (c >= 'A' && c <= 'Z') letters.push_back(-(c - 'A' + 1));
        else throw DomainError(fmt::format("unexpected character '{}' in word", c));
    }
    return reduce(letters, rank);
}

int letter_key(int letter) { return 2 * (std::abs(letter) - 1) + (letter < 0 ? 1 : 0); }

namespace {

bool lex_less(const std::vector<int>& x, const std::vector<int>& y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(),
                                        [](int a, int b) { return letter_key(a) < letter_key(b); });
}

bool is_cyclically_reduced(const std::vector<int>& v) { return v.size() < 2 || v.front() != -v.back(); }

void dfs(int rank, int maxLen, std::vector<int>& cur, std::vector<FreeWord>& out) {
    if (!cur.empty() && is_cyclically_reduced(cur)) {
        FreeWord w = reduce(cur);
        if (canonical_class(w) == w) out.push_back(std::move(w));
    }
    if (static_cast<int>(cur.size()) == maxLen) return;
    for (int k = 0; k < 2 * rank; ++k) {
        const int x = (k % 2 == 0) ? (k / 2 + 1) : -(k / 2 + 1);
        if (!cur.empty() && cur.back() == -x) continue;
        cur.push_back(x);
        dfs(rank, maxLen, cur, out);
        cur.pop_back();
    }
}

}  // namespace

bool shortlex_less(const FreeWord& x, const FreeWord& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return lex_less(x.letters(), y.letters());
}

FreeWord cyclic_reduce(const FreeWord& w) {
    const auto& v = w.letters();
    std::size_t i = 0, j = v.size();
    while (j - i >= 2 && v[i] == -v[j - 1]) {
        ++i;
        --j;
    }
    return reduce(std::vector<int>(v.begin() + static_cast<std::ptrdiff_t>(i), v.begin() + static_cast<std::ptrdiff_t>(j)));
}

FreeWord canonical_class(const FreeWord& w) {
    const FreeWord c = cyclic_reduce(w);
    if (c.empty()) return c;
    std::vector<int> best = c.letters();
    for (const FreeWord& base : {c, c.inverse()}) {
        std::vector<int> r = base.letters();
        for (std::size_t k = 0; k < r.size(); ++k) {
            if (lex_less(r, best)) best = r;
            std::rotate(r.begin(), r.begin() + 1, r.end());
        }
    }
    return reduce(best);
}

std::vector<FreeWord> enumerate_classes(int rank, int maxLen) {
    if (rank < 1 || maxLen < 1) throw DomainError("enumeration needs rank >= 1 and maxLen >= 1");
    std::vector<FreeWord> out;
    std::vector<int> cur;
    dfs(rank, maxLen, cur, out);
    std::sort(out.begin(), out.end(), shortlex_less);
    return out;
}

FreeWord christoffel_primitive(int p, int q) {
    if (p < 0 || q < 0 || (p == 0 && q == 0) || std::gcd(p, q) != 1)
        throw DomainError(fmt::format("Christoffel word needs coprime non-negative (p, q), got ({}, {})", p, q));
    const long n = p + q;
    std::vector<int> letters;
    letters.reserve(static_cast<std::size_t>(n));
    for (long i = 1; i <= n; ++i) {
        const bool step = (i * q) / n != ((i - 1) * q) / n;
        letters.push_back(step ? 2 : 1);
    }
    return reduce(letters);
}

std::vector<FreeWord> primitive_classes(int maxLen) {
    if (maxLen < 1) throw DomainError("maxLen must be >= 1");
    std::vector<FreeWord> out{reduce({2})};
    for (int p = 1; p <= maxLen; ++p) {
        for (int q = -(maxLen - p); q <= maxLen - p; ++q) {
            if (std::gcd(p, std::abs(q)) != 1) continue;
            FreeWord w = christoffel_primitive(p, std::abs(q));
            if (q < 0) {
                std::vector<int> v = w.letters();
                for (int& x : v) if (x == 2) x = -2;
                w = reduce(v);
            }
            out.push_back(canonical_class(w));
        }
    }
    std::sort(out.begin(), out.end(), shortlex_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Cocycle operator+(const Cocycle& x, const Cocycle& y) {
    if (x.uGen.size() != y.uGen.size()) throw DomainError("cocycle ranks differ");
    Cocycle r = x;
    for (std::size_t i = 0; i < r.uGen.size(); ++i) r.uGen[i] += y.uGen[i];
    return r;
}

Cocycle operator*(double s, const Cocycle& x) {
    Cocycle r = x;
    for (MinkVec& v : r.uGen) v *= s;
    return r;
}

Cocycle coboundary(const std::vector<LinearIso>& gens, const MinkVec& v) {
    Cocycle c;
    for (const LinearIso& g : gens) c.uGen.push_back(v - g * v);
    return c;
}

LinearIso eval_linear(const std::vector<LinearIso>& gens, const FreeWord& word) {
    LinearIso r;
    for (int x : word.letters()) {
        const auto i = static_cast<std::size_t>(std::abs(x) - 1);
        if (i >= gens.size()) throw DomainError(fmt::format("word uses generator {} beyond rank {}", i + 1, gens.size()));
        r = r * (x > 0 ? gens[i] : gens[i].inverse());
    }
    return r;
}

AffineIso eval_affine(const std::vector<LinearIso>& gens, const Cocycle& u, const FreeWord& word) {
    if (u.uGen.size() != gens.size()) throw DomainError("cocycle rank does not match the generator count");
    AffineIso r;
    for (int x : word.letters()) {
        const auto i = static_cast<std::size_t>(std::abs(x) - 1);
        if (i >= gens.size()) throw DomainError(fmt::format("word uses generator {} beyond rank {}", i + 1, gens.size()));
        const AffineIso g{gens[i], u.uGen[i]};
        r = r * (x > 0 ? g : g.inverse());
    }
    return r;
}

}  // namespace margulis
