#include "grex/chains.hpp"

#include <algorithm>

namespace grex {

namespace {

bool even_value(Int v) { return v % 2 == 0; }

/// Valid GrassDesc parameter ranges, without a field.
void check_term(GrassKind kind, Int k, Int n, std::size_t m) {
    auto fail = [&](const std::string& what) {
        throw InvalidDescriptor("chain term " + std::to_string(m) + ": " + what + " (k = " +
                                std::to_string(k) + ", dim V = " + std::to_string(n) + ")");
    };
    if (k < 1) fail("k must be positive");
    if (n < 1) fail("dim V must be positive");
    switch (kind) {
        case GrassKind::plain:
            if (k > n) fail("k exceeds dim V");
            break;
        case GrassKind::symp:
            if (!even_value(n)) fail("symplectic dimension must be even");
            if (2 * k > n) fail("k exceeds dim V / 2");
            break;
        case GrassKind::ortho:
            if (n < 7) fail("orthogonal terms need dim V >= 7");
            if (2 * k > n) fail("k exceeds floor(dim V / 2)");
            if (even_value(n) && (k == n / 2 || k == n / 2 - 1))
                fail("k in {dimV/2, dimV/2 - 1} is excluded for even dim V");
            break;
    }
}

Int chain_dim(GrassKind kind, Int k, Int n) {
    switch (kind) {
        case GrassKind::plain: return k * (n - k);
        case GrassKind::symp: return k * n - k * (3 * k - 1) / 2;
        case GrassKind::ortho: return k * n - k * (3 * k + 1) / 2;
    }
    throw Error("unreachable");
}

}  // namespace

void ChainSpec::validate() const {
    term.k_rule.validate();
    term.n_rule.validate();
    if (term.n_rule.slope <= 0)
        throw InvalidDescriptor("chain dimensions must eventually increase");
    if (term.k_rule.slope < 0) throw InvalidDescriptor("chain k-sequence must be nondecreasing");

    if (term.kind == GrassKind::ortho) {
        if (!term.parity) throw InvalidDescriptor("orthogonal chains must declare a parity");
        if (!even_value(term.n_rule.slope))
            throw InvalidDescriptor("orthogonal chains need an even dimension slope to keep the parity");
        Int probe = term.n_rule.value(term.n_rule.m0);
        bool is_even = even_value(probe);
        if ((term.parity == Parity::even) != is_even)
            throw InvalidDescriptor("declared parity does not match the dimension rule");
    }
    if (term.kind == GrassKind::symp) {
        if (!even_value(term.n_rule.slope) || !even_value(term.n_rule.value(term.n_rule.m0)))
            throw InvalidDescriptor("symplectic chains need even dimensions");
    }

    // explicit checks over the prefix and the first affine terms; the tail is
    // covered by slope comparisons
    std::size_t probe_to = std::max(term.k_rule.m0, term.n_rule.m0) + 3;
    for (std::size_t m = 1; m <= probe_to; ++m) {
        GrassKind kind_m = m <= kind_prefix.size() ? kind_prefix[m - 1] : term.kind;
        check_term(kind_m, term.k_rule.value(m), term.n_rule.value(m), m);
    }
    // tail: k(m) valid against n(m) forever
    Int ak = term.k_rule.slope, bk = term.k_rule.intercept;
    Int an = term.n_rule.slope, bn = term.n_rule.intercept;
    Int factor = term.kind == GrassKind::plain ? 1 : 2;
    Int margin = 0;  // slack required between factor*k and n in the tail
    if (term.kind == GrassKind::ortho) margin = term.parity == Parity::even ? 4 : 1;
    if (factor * ak > an)
        throw InvalidDescriptor("k grows faster than the dimension allows");
    if (factor * ak == an && factor * bk > bn - margin)
        throw InvalidDescriptor("k stays too close to the dimension bound");

    // growth of the variety dimension
    std::size_t big = probe_to + 16;
    if (chain_dim(term.kind, term.k_rule.value(big), term.n_rule.value(big)) <=
        chain_dim(term.kind, term.k_rule.value(probe_to), term.n_rule.value(probe_to)))
        throw InvalidDescriptor("chain dimensions do not tend to infinity");

    if (steps.eventual == StepClass::factors_quadric && term.kind != GrassKind::ortho)
        throw InvalidDescriptor("quadric factoring steps need orthogonal terms");
}

LimitInvariants limit_invariants(const ChainSpec& c) {
    c.validate();
    LimitInvariants out;
    out.kind = c.term.kind;
    out.parity = c.term.parity;

    if (c.term.k_rule.slope > 0) {
        out.k_limit = std::nullopt;
    } else {
        out.k_limit = c.term.k_rule.intercept;
    }

    // codimension: n - k for plain, floor(n/2) - k for the isotropic kinds
    Int ak = c.term.k_rule.slope, bk = c.term.k_rule.intercept;
    Int an = c.term.n_rule.slope, bn = c.term.n_rule.intercept;
    Int c_slope, c_icept;
    if (c.term.kind == GrassKind::plain) {
        c_slope = an - ak;
        c_icept = bn - bk;
    } else {
        // the dimension slope is even for validated isotropic chains
        Int r = c.term.parity == Parity::odd ? 1 : 0;
        c_slope = an / 2 - ak;
        c_icept = (bn - r) / 2 - bk;
    }
    if (c_slope > 0) {
        out.c_limit = std::nullopt;
    } else if (c_slope == 0) {
        out.c_limit = c_icept;
    } else {
        throw InvalidDescriptor("chain codimension decreases without bound");
    }
    return out;
}

void StandardFamily::validate() const {
    switch (tag) {
        case Tag::g_k:
            if (param < 1) throw InvalidDescriptor("G(k) needs k >= 1");
            break;
        case Tag::go_k_inf:
            if (param < 1) throw InvalidDescriptor("GO(k,inf) needs k >= 1");
            break;
        case Tag::go0_inf_k:
            if (param < 2)
                throw InvalidDescriptor("GO0(inf,k) needs k >= 2; k = 1 is excluded by convention");
            break;
        case Tag::go1_inf_k:
            if (param < 0) throw InvalidDescriptor("GO1(inf,k) needs k >= 0");
            break;
        case Tag::gs_k_inf:
            if (param < 1) throw InvalidDescriptor("GS(k,inf) needs k >= 1");
            break;
        case Tag::gs_inf_k:
            if (param < 0) throw InvalidDescriptor("GS(inf,k) needs k >= 0");
            break;
        default:
            break;
    }
}

StandardFamily StandardFamily::normalized() const {
    validate();
    if (tag == Tag::gs_k_inf && param == 1) return StandardFamily{Tag::g_k, 1};
    return *this;
}

std::string StandardFamily::str() const {
    switch (tag) {
        case Tag::g_k: return "G(" + std::to_string(param) + ")";
        case Tag::g_inf: return "G(inf)";
        case Tag::go_k_inf: return "GO(" + std::to_string(param) + ",inf)";
        case Tag::go0_inf_k: return "GO0(inf," + std::to_string(param) + ")";
        case Tag::go1_inf_k: return "GO1(inf," + std::to_string(param) + ")";
        case Tag::go_inf_inf: return "GO(inf,inf)";
        case Tag::gs_k_inf: return "GS(" + std::to_string(param) + ",inf)";
        case Tag::gs_inf_k: return "GS(inf," + std::to_string(param) + ")";
        default: return "GS(inf,inf)";
    }
}

StandardFamily StandardFamily::parse(const std::string& s) {
    auto checked = [](StandardFamily f) {
        f.validate();
        return f;
    };
    auto body = [&](const std::string& head) -> std::optional<std::string> {
        if (s.size() > head.size() + 1 && s.compare(0, head.size(), head) == 0 &&
            s[head.size()] == '(' && s.back() == ')')
            return s.substr(head.size() + 1, s.size() - head.size() - 2);
        return std::nullopt;
    };
    if (s == "P(inf)") return checked(StandardFamily{Tag::g_k, 1});
    for (auto [head, tag] : std::vector<std::pair<std::string, Tag>>{
             {"GO0", Tag::go0_inf_k}, {"GO1", Tag::go1_inf_k}, {"GO", Tag::go_k_inf},
             {"GS", Tag::gs_k_inf}, {"G", Tag::g_k}}) {
        auto b = body(head);
        if (!b) continue;
        std::string inner = *b;
        auto comma = inner.find(',');
        if (tag == Tag::g_k) {
            if (comma != std::string::npos) throw InvalidDescriptor("bad family string: " + s);
            if (inner == "inf") return checked(StandardFamily{Tag::g_inf, 0});
            return checked(StandardFamily{Tag::g_k, std::stoll(inner)});
        }
        if (comma == std::string::npos) throw InvalidDescriptor("bad family string: " + s);
        std::string a = inner.substr(0, comma), bpart = inner.substr(comma + 1);
        if (tag == Tag::go0_inf_k || tag == Tag::go1_inf_k) {
            if (a != "inf") throw InvalidDescriptor("bad family string: " + s);
            return checked(StandardFamily{tag, std::stoll(bpart)});
        }
        bool ainf = a == "inf", binf = bpart == "inf";
        if (tag == Tag::go_k_inf) {
            if (ainf && binf) return checked(StandardFamily{Tag::go_inf_inf, 0});
            if (binf) return checked(StandardFamily{Tag::go_k_inf, std::stoll(a)});
            throw InvalidDescriptor("bad family string: " + s +
                                    " (GO(inf,k) carries a parity: use GO0/GO1)");
        }
        if (ainf && binf) return checked(StandardFamily{Tag::gs_inf_inf, 0});
        if (binf) return checked(StandardFamily{Tag::gs_k_inf, std::stoll(a)});
        if (ainf) return checked(StandardFamily{Tag::gs_inf_k, std::stoll(bpart)});
        throw InvalidDescriptor("bad family string: " + s);
    }
    throw InvalidDescriptor("bad family string: " + s);
}

bool are_isomorphic(const StandardFamily& a, const StandardFamily& b) {
    return a.normalized() == b.normalized();
}

namespace {

StandardFamily classify_plain(const LimitInvariants& inv, std::vector<std::string>& notes) {
    using Tag = StandardFamily::Tag;
    if (inv.k_limit) return StandardFamily{Tag::g_k, *inv.k_limit};
    if (inv.c_limit) {
        notes.push_back("bounded codimension: classified through the duality G(n-c, V) = G(c, V*)");
        return StandardFamily{Tag::g_k, *inv.c_limit};
    }
    return StandardFamily{Tag::g_inf, 0};
}

}  // namespace

ChainClassification classify_chain(const ChainSpec& c) {
    ChainClassification out{StandardFamily{}, {}};
    LimitInvariants inv = limit_invariants(c);
    using Tag = StandardFamily::Tag;

    if (!c.kind_prefix.empty())
        out.notes.push_back("mixed-kind prefix ignored: the eventual kind decides the limit");

    switch (c.steps.eventual) {
        case StepClass::factors_projective:
            out.family = StandardFamily{Tag::g_k, 1};
            return out;
        case StepClass::factors_quadric: {
            // unbounded quadric dimension gives the infinite quadric, bounded
            // collapses to the infinite projective space
            Int qslope = c.term.n_rule.slope - 2 * c.term.k_rule.slope;
            out.notes.push_back(
                "quadric chain rule: unbounded quadric dimension selects GO(1,inf), bounded selects G(1)");
            out.family = qslope > 0 ? StandardFamily{Tag::go_k_inf, 1} : StandardFamily{Tag::g_k, 1};
            return out;
        }
        case StepClass::combination: {
            out.notes.push_back(
                "combination steps route through plain Grassmannians; classifying the induced plain chain");
            out.family = classify_plain(inv, out.notes);
            return out;
        }
        case StepClass::standard:
            break;
    }

    switch (c.term.kind) {
        case GrassKind::plain:
            out.family = classify_plain(inv, out.notes);
            break;
        case GrassKind::symp:
            if (inv.k_limit) {
                out.family = StandardFamily{Tag::gs_k_inf, *inv.k_limit}.normalized();
            } else if (inv.c_limit) {
                out.family = StandardFamily{Tag::gs_inf_k, *inv.c_limit};
            } else {
                out.family = StandardFamily{Tag::gs_inf_inf, 0};
            }
            break;
        case GrassKind::ortho:
            if (inv.k_limit) {
                out.family = StandardFamily{Tag::go_k_inf, *inv.k_limit};
            } else if (inv.c_limit) {
                out.family = inv.parity == Parity::even
                                 ? StandardFamily{Tag::go0_inf_k, *inv.c_limit}
                                 : StandardFamily{Tag::go1_inf_k, *inv.c_limit};
            } else {
                out.family = StandardFamily{Tag::go_inf_inf, 0};
            }
            break;
    }
    out.family.validate();
    return out;
}

Signature signature(const StandardFamily& f0) {
    StandardFamily f = f0.normalized();
    using Tag = StandardFamily::Tag;
    constexpr Int inf = -1;
    Signature s;
    switch (f.tag) {
        case Tag::g_k:
            if (f.param == 1) {
                s.alpha_dims = {inf};
                s.beta_dims = {inf};
                s.has_quadric_outside = false;
                s.pattern = Signature::Pattern::not_applicable;
            } else {
                s.alpha_dims = {f.param};
                s.beta_dims = {inf};
                s.has_quadric_outside = true;
                s.quad_dim = 4;
                s.pattern = Signature::Pattern::line_or_empty;
            }
            break;
        case Tag::g_inf:
            s.alpha_dims = {inf};
            s.beta_dims = {inf};
            s.has_quadric_outside = true;
            s.quad_dim = 4;
            s.pattern = Signature::Pattern::line_or_empty;
            break;
        case Tag::go_k_inf:
            s.alpha_dims = {f.param};
            s.beta_dims = {inf};
            s.has_quadric_outside = true;
            s.quad_dim = inf;
            s.pattern = Signature::Pattern::point_possible;
            break;
        case Tag::go0_inf_k:
            s.alpha_dims = {inf};
            s.has_quadric_outside = true;
            s.quad_dim = 2 * f.param;
            s.pattern = Signature::Pattern::not_applicable;
            break;
        case Tag::go1_inf_k:
            s.alpha_dims = {inf};
            if (f.param >= 1) {
                s.beta_dims = {f.param};
                s.pattern = Signature::Pattern::point_possible;
            } else {
                s.pattern = Signature::Pattern::not_applicable;
            }
            s.has_quadric_outside = true;
            s.quad_dim = 2 * f.param + 1;
            break;
        case Tag::go_inf_inf:
            s.alpha_dims = {inf};
            s.beta_dims = {inf};
            s.has_quadric_outside = true;
            s.quad_dim = inf;
            s.pattern = Signature::Pattern::point_possible;
            break;
        case Tag::gs_k_inf:
            s.alpha_dims = {f.param};
            s.beta_dims = {inf};
            s.has_quadric_outside = true;
            s.quad_dim = 3;
            s.pattern = Signature::Pattern::line_or_empty;
            break;
        case Tag::gs_inf_k:
            if (f.param >= 1) {
                s.alpha_dims = {inf};
                s.beta_dims = {2 * f.param + 1};
                s.pattern = Signature::Pattern::line_or_empty;
            } else {
                s.beta_dims = {1};
                s.pattern = Signature::Pattern::not_applicable;
            }
            s.has_quadric_outside = true;
            s.quad_dim = 3;
            break;
        case Tag::gs_inf_inf:
            s.alpha_dims = {inf};
            s.beta_dims = {inf};
            s.has_quadric_outside = true;
            s.quad_dim = 3;
            s.pattern = Signature::Pattern::line_or_empty;
            break;
    }
    return s;
}

ChainSpec subsequence(const ChainSpec& c, std::size_t alpha, std::size_t beta) {
    if (alpha < 1) throw InvalidDescriptor("subsequence stride must be positive");
    auto remap = [&](const AffineRule& r) {
        AffineRule out;
        // smallest m with alpha*m + beta >= r.m0
        std::size_t m0 = 1;
        while (alpha * m0 + beta < r.m0) ++m0;
        out.m0 = m0;
        for (std::size_t m = 1; m < m0; ++m) out.prefix.push_back(r.value(alpha * m + beta));
        out.slope = r.slope * static_cast<Int>(alpha);
        out.intercept = r.slope * static_cast<Int>(beta) + r.intercept;
        return out;
    };
    ChainSpec out;
    out.term.kind = c.term.kind;
    out.term.parity = c.term.parity;
    out.term.k_rule = remap(c.term.k_rule);
    out.term.n_rule = remap(c.term.n_rule);
    out.steps.eventual = c.steps.eventual;  // compositions stay in the class
    out.validate();
    return out;
}

GrassDesc<Fp> truncate(const ChainSpec& c, std::size_t m, Int p) {
    c.validate();
    GrassKind kind = m <= c.kind_prefix.size() ? c.kind_prefix[m - 1] : c.term.kind;
    return standard_desc<Fp>(kind, static_cast<std::size_t>(c.term.k_rule.value(m)),
                             static_cast<std::size_t>(c.term.n_rule.value(m)), p);
}

}  // namespace grex
