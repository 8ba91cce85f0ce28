#pragma once

// Chains of linear embeddings of (isotropic) Grassmannians as symbolic data:
// eventually-affine parameter rules, limit invariants, classification into
// the nine standard limit families, normalization, and the distinguishing
// signature table.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "grex/grassmann.hpp"

namespace grex {

/// value(m) = slope*m + intercept for m >= m0, explicit values before that.
struct AffineRule {
    std::size_t m0 = 1;
    std::vector<Int> prefix;  // values for m = 1 .. m0-1
    Int slope = 0;
    Int intercept = 0;

    Int value(std::size_t m) const {
        if (m == 0) throw InvalidDescriptor("chain indices start at 1");
        if (m < m0) {
            if (m - 1 >= prefix.size()) throw InvalidDescriptor("affine rule prefix too short");
            return prefix[m - 1];
        }
        return slope * static_cast<Int>(m) + intercept;
    }

    void validate() const {
        if (prefix.size() + 1 != m0) throw InvalidDescriptor("affine rule prefix must cover 1..m0-1");
    }

    bool operator==(const AffineRule&) const = default;
};

enum class Parity { even, odd };

inline const char* parity_name(Parity p) { return p == Parity::even ? "even" : "odd"; }

enum class StepClass { standard, combination, factors_projective, factors_quadric };

inline const char* step_class_name(StepClass c) {
    switch (c) {
        case StepClass::standard: return "standard";
        case StepClass::combination: return "combination";
        case StepClass::factors_projective: return "factors_projective";
        default: return "factors_quadric";
    }
}

struct TermRule {
    GrassKind kind = GrassKind::plain;  // the eventual kind
    AffineRule k_rule;
    AffineRule n_rule;  // n_rule(m) = dim V_m
    std::optional<Parity> parity;  // required and eventually constant for ortho

    bool operator==(const TermRule&) const = default;
};

struct StepRule {
    StepClass eventual = StepClass::standard;
    std::vector<StepClass> prefix;

    bool operator==(const StepRule&) const = default;
};

struct ChainSpec {
    TermRule term;
    StepRule steps;
    std::vector<GrassKind> kind_prefix;  // mixed chains: kinds of the first terms

    void validate() const;

    bool operator==(const ChainSpec&) const = default;
};

struct LimitInvariants {
    GrassKind kind;
    std::optional<Int> k_limit;  // nullopt = infinite
    std::optional<Int> c_limit;  // codimension limit (n-k or floor(n/2)-k)
    std::optional<Parity> parity;
};

LimitInvariants limit_invariants(const ChainSpec& c);

/// One of the nine standard limit families (plus the P(inf) alias on input).
struct StandardFamily {
    enum class Tag {
        g_k,        // G(k), k >= 1
        g_inf,      // G(inf)
        go_k_inf,   // GO(k, inf), k >= 1
        go0_inf_k,  // GO0(inf, k), k >= 2
        go1_inf_k,  // GO1(inf, k), k >= 0
        go_inf_inf,
        gs_k_inf,  // GS(k, inf), k >= 2 after normalization
        gs_inf_k,  // GS(inf, k), k >= 0
        gs_inf_inf,
    };
    Tag tag = Tag::g_k;
    Int param = 1;

    void validate() const;
    StandardFamily normalized() const;
    std::string str() const;
    static StandardFamily parse(const std::string& s);

    bool operator==(const StandardFamily&) const = default;
};

struct ChainClassification {
    StandardFamily family;
    std::vector<std::string> notes;
};

ChainClassification classify_chain(const ChainSpec& c);

bool are_isomorphic(const StandardFamily& a, const StandardFamily& b);

/// Distinguishing data: dimensions of maximal projective spaces by label,
/// the largest quadric dimension outside projective spaces, and the
/// alpha/beta intersection pattern. -1 encodes an infinite dimension.
struct Signature {
    enum class Pattern { point_possible, line_or_empty, not_applicable };

    std::set<Int> alpha_dims;
    std::set<Int> beta_dims;
    bool has_quadric_outside = false;
    Int quad_dim = 0;
    Pattern pattern = Pattern::not_applicable;

    bool operator==(const Signature&) const = default;
    bool operator<(const Signature& o) const {
        auto key = [](const Signature& s) {
            return std::tuple(s.alpha_dims, s.beta_dims, s.has_quadric_outside, s.quad_dim,
                              static_cast<int>(s.pattern));
        };
        return key(*this) < key(o);
    }
};

Signature signature(const StandardFamily& f);

/// Chain obtained by restricting to the indices alpha*m + beta.
ChainSpec subsequence(const ChainSpec& c, std::size_t alpha, std::size_t beta);

/// Concrete descriptor of the m-th chain term over GF(p); used by the
/// desk-scale truncation checks.
GrassDesc<Fp> truncate(const ChainSpec& c, std::size_t m, Int p);

}  // namespace grex
