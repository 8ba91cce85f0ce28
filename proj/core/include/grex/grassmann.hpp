#pragma once

// Grassmannians and isotropic Grassmannians over exact fields: descriptors,
// dimension formulas, point enumeration over GF(p), Pluecker coordinates,
// pencil lines, the maximal projective-space and quadric families with their
// flag data, and intersection typing of family members.

#include <algorithm>
#include <variant>
#include <vector>

#include "grex/counts.hpp"
#include "grex/enumerate.hpp"
#include "grex/forms.hpp"

namespace grex {

enum class GrassKind { plain, ortho, symp };

inline const char* grass_kind_name(GrassKind k) {
    switch (k) {
        case GrassKind::plain: return "plain";
        case GrassKind::ortho: return "ortho";
        default: return "symp";
    }
}

template <class K>
struct GrassDesc {
    GrassKind kind = GrassKind::plain;
    std::size_t k = 1;
    FormedSpace<K> space;

    std::size_t dim_v() const { return space.dim; }
    typename K::Ctx ctx() const { return space.ctx; }
    /// floor(dim V / 2) for the isotropic kinds
    std::size_t n_iso() const { return space.dim / 2; }

    void validate() const {
        space.validate();
        switch (kind) {
            case GrassKind::plain:
                if (k < 1 || k > dim_v()) throw InvalidDescriptor("plain Grassmannian needs 1 <= k <= dim V");
                break;
            case GrassKind::symp:
                if (!space.has_form() || space.kind() != FormKind::symplectic)
                    throw InvalidDescriptor("symplectic Grassmannian needs a symplectic form");
                if (dim_v() % 2 != 0) throw InvalidDescriptor("symplectic space dimension must be even");
                if (k < 1 || k > n_iso()) throw InvalidDescriptor("symplectic Grassmannian needs 1 <= k <= n");
                break;
            case GrassKind::ortho:
                if (!space.has_form() || space.kind() != FormKind::symmetric)
                    throw InvalidDescriptor("orthogonal Grassmannian needs a symmetric form");
                if (K::characteristic(ctx()) == 2)
                    throw InvalidDescriptor("orthogonal Grassmannians are not defined in characteristic 2");
                if (dim_v() < 7) throw InvalidDescriptor("orthogonal Grassmannian needs dim V >= 7");
                if (k < 1 || k > n_iso()) throw InvalidDescriptor("orthogonal Grassmannian needs 1 <= k <= floor(dim V/2)");
                if (dim_v() % 2 == 0 && (k == n_iso() || k == n_iso() - 1))
                    throw InvalidDescriptor("orthogonal Grassmannian excludes k in {dimV/2, dimV/2 - 1} for even dim V");
                break;
        }
    }

    bool operator==(const GrassDesc&) const = default;
};

template <class K>
GrassDesc<K> plain_desc(std::size_t k, std::size_t dim, typename K::Ctx ctx) {
    GrassDesc<K> d{GrassKind::plain, k, FormedSpace<K>::plain(dim, ctx)};
    d.validate();
    return d;
}

template <class K>
GrassDesc<K> standard_desc(GrassKind kind, std::size_t k, std::size_t dim, typename K::Ctx ctx) {
    if (kind == GrassKind::plain) return plain_desc<K>(k, dim, ctx);
    FormKind fk = kind == GrassKind::ortho ? FormKind::symmetric : FormKind::symplectic;
    GrassDesc<K> d{kind, k, standard_hyperbolic<K>(fk, dim, ctx)};
    d.validate();
    return d;
}

template <class K>
Int dimension(const GrassDesc<K>& d) {
    d.validate();
    Int k = static_cast<Int>(d.k);
    Int m = static_cast<Int>(d.dim_v());
    switch (d.kind) {
        case GrassKind::plain:
            return k * (m - k);
        case GrassKind::symp: {
            Int n = m / 2;
            return 2 * k * n - k * (3 * k - 1) / 2;
        }
        case GrassKind::ortho: {
            if (m % 2 == 0) {
                Int n = m / 2;
                return 2 * k * n - k * (3 * k + 1) / 2;
            }
            Int n = (m - 1) / 2;
            return k * (2 * n + 1) - k * (3 * k + 1) / 2;
        }
    }
    throw Error("unreachable");
}

/// Point count of the descriptor over GF(q), assuming the standard split
/// form (any congruent Gram has the same count).
inline BigInt grass_point_count(GrassKind kind, std::size_t k, std::size_t dim, Int q) {
    switch (kind) {
        case GrassKind::plain: return gaussian_binomial(dim, k, q);
        case GrassKind::symp: return symplectic_isotropic_count(dim, k, q);
        case GrassKind::ortho: return orthogonal_isotropic_count(dim, k, q);
    }
    throw Error("unreachable");
}

/// Whether a subspace is a point of the Grassmannian.
template <class K>
bool is_point(const GrassDesc<K>& d, const Subspace<K>& s) {
    if (s.ambient_dim() != d.dim_v() || s.dim() != d.k) return false;
    if (d.kind == GrassKind::plain) return true;
    return is_isotropic(d.space, s);
}

// ---------------------------------------------------------------------------
// Enumeration over GF(p)

inline std::vector<Int> flatten_gram(const Matrix<Fp>& g) {
    std::vector<Int> out(g.rows() * g.cols());
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) out[i * g.cols() + j] = g.at(i, j).value();
    return out;
}

/// Isotropic j-dimensional subspaces of a formed GF(p)-space, lexicographic.
inline std::vector<Subspace<Fp>> isotropic_subspaces(const FormedSpace<Fp>& sp, std::size_t j,
                                                     BigInt cap = BigInt(2000000)) {
    BigInt bound = gaussian_binomial(sp.dim, j, sp.ctx);
    if (sp.gram() == standard_gram<Fp>(sp.kind(), sp.dim, sp.ctx)) {
        bound = sp.kind() == FormKind::symplectic ? symplectic_isotropic_count(sp.dim, j, sp.ctx)
                                                  : orthogonal_isotropic_count(sp.dim, j, sp.ctx);
    }
    if (bound > cap)
        throw CapExceeded("isotropic enumeration bound " + bound.str() + " > cap " + cap.str(), bound);
    SubspaceStream::Options opt;
    opt.gram = sp.gram();
    opt.symmetric_kind = sp.kind() == FormKind::symmetric;
    SubspaceStream st(sp.dim, j, sp.ctx, opt);
    std::vector<Subspace<Fp>> out;
    while (auto s = st.next()) out.push_back(std::move(*s));
    return out;
}

/// All points of the Grassmannian in lexicographic order of canonical bases.
inline std::vector<Subspace<Fp>> enumerate_points(const GrassDesc<Fp>& d,
                                                  BigInt cap = BigInt(2000000)) {
    d.validate();
    if (d.kind == GrassKind::plain) return enumerate_subspaces(d.dim_v(), d.k, d.ctx(), cap);
    return isotropic_subspaces(d.space, d.k, cap);
}

namespace detail {

/// j-dimensional subspaces of a fixed subspace, mapped into the big ambient.
inline std::vector<Subspace<Fp>> subspaces_within(const Subspace<Fp>& host, std::size_t j) {
    std::vector<Subspace<Fp>> out;
    for (const auto& s : enumerate_subspaces(host.dim(), j, host.ctx())) {
        out.push_back(Subspace<Fp>::from_rows(s.basis() * host.basis()));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Isotropic j-spaces of the quotient perp(w)/w, lifted back to the ambient
/// (so each contains w).
inline std::vector<Subspace<Fp>> isotropic_lifts(const FormedSpace<Fp>& sp, const Subspace<Fp>& w,
                                                 std::size_t j) {
    QuotientForm<Fp> qf = induced_quotient_form(sp, w);
    std::vector<Subspace<Fp>> out;
    for (const auto& s : isotropic_subspaces(qf.space, j)) {
        out.push_back(qf.quotient.lift(s));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Pluecker coordinates

/// All k x k minors in lexicographic column-set order, scaled so the first
/// nonzero coordinate is one. Injective on points.
template <class K>
std::vector<K> plucker(const Subspace<K>& s) {
    std::size_t k = s.dim();
    std::vector<K> coords;
    detail::for_each_combination(s.ambient_dim(), k, [&](const std::vector<std::size_t>& cols) {
        coords.push_back(determinant(s.basis().select_cols(cols)));
    });
    for (const auto& c : coords) {
        if (!c.is_zero()) {
            K inv = c.inverse();
            for (auto& x : coords) x *= inv;
            break;
        }
    }
    return coords;
}

// ---------------------------------------------------------------------------
// Pencil lines

/// The canonical projective line through two points with dim(p cap q) = k-1:
/// all V with inner < V < outer, filtered by isotropy on isotropic hosts.
/// `full` records whether every member of the pencil stayed in the host.
struct PencilLine {
    Subspace<Fp> inner;
    Subspace<Fp> outer;
    std::vector<Subspace<Fp>> points;  // sorted
    bool full = false;

    bool operator==(const PencilLine& o) const { return inner == o.inner && outer == o.outer; }
    bool operator<(const PencilLine& o) const {
        if (inner != o.inner) return inner < o.inner;
        return outer < o.outer;
    }
};

/// Members of the pencil between inner and outer (dim outer = dim inner + 2).
inline PencilLine pencil_between(const GrassDesc<Fp>& d, const Subspace<Fp>& inner,
                                 const Subspace<Fp>& outer) {
    PencilLine line;
    line.inner = inner;
    line.outer = outer;
    QuotientSpace<Fp> q(outer, inner);
    if (q.dim() != 2) throw DimensionMismatch("pencil needs a two dimensional gap");
    std::size_t expected = static_cast<std::size_t>(d.ctx()) + 1;
    for (const auto& l : enumerate_subspaces(2, 1, d.ctx())) {
        Subspace<Fp> v = q.lift(l);
        if (is_point(d, v)) line.points.push_back(std::move(v));
    }
    std::sort(line.points.begin(), line.points.end());
    line.full = line.points.size() == expected;
    return line;
}

inline std::optional<PencilLine> pencil_line(const GrassDesc<Fp>& d, const Subspace<Fp>& p,
                                             const Subspace<Fp>& q) {
    if (p == q) return std::nullopt;
    if (!is_point(d, p) || !is_point(d, q)) throw InvalidDescriptor("pencil endpoints must be points");
    Subspace<Fp> inner = intersect(p, q);
    if (inner.dim() + 1 != d.k) return std::nullopt;
    return pencil_between(d, inner, sum(p, q));
}

/// Every pencil line of the host, keyed by its (inner, outer) flag. A pencil
/// between inner and outer stays inside an isotropic host exactly when the
/// line part sits inside perp(inner) (and, for symmetric forms, the whole
/// outer space is isotropic, by polarization).
inline std::vector<PencilLine> enumerate_lines(const GrassDesc<Fp>& d, BigInt cap = BigInt(2000000)) {
    d.validate();
    std::vector<PencilLine> out;
    std::vector<Subspace<Fp>> inners;
    if (d.k == 1) {
        inners.push_back(Subspace<Fp>::zero(d.dim_v(), d.ctx()));
    } else if (d.kind == GrassKind::plain) {
        inners = enumerate_subspaces(d.dim_v(), d.k - 1, d.ctx(), cap);
    } else {
        inners = isotropic_subspaces(d.space, d.k - 1, cap);
    }
    for (const auto& inner : inners) {
        std::vector<Subspace<Fp>> outers;
        if (d.kind == GrassKind::plain) {
            QuotientSpace<Fp> q(Subspace<Fp>::full(d.dim_v(), d.ctx()), inner);
            for (const auto& plane : enumerate_subspaces(q.dim(), 2, d.ctx(), cap))
                outers.push_back(q.lift(plane));
        } else if (d.kind == GrassKind::symp) {
            QuotientSpace<Fp> q(perp(d.space, inner), inner);
            for (const auto& plane : enumerate_subspaces(q.dim(), 2, d.ctx(), cap))
                outers.push_back(q.lift(plane));
        } else {
            for (const auto& outer : detail::isotropic_lifts(d.space, inner, 2)) outers.push_back(outer);
        }
        for (const auto& outer : outers) {
            PencilLine line = pencil_between(d, inner, outer);
            if (!line.full) throw Error("line enumeration produced a broken pencil");
            out.push_back(std::move(line));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Families of maximal projective spaces and quadrics

enum class FamilyTag { po_alpha, po_beta, qo_beta, qo_gamma, ps_alpha, ps_beta };

inline const char* family_tag_name(FamilyTag t) {
    switch (t) {
        case FamilyTag::po_alpha: return "PO_alpha";
        case FamilyTag::po_beta: return "PO_beta";
        case FamilyTag::qo_beta: return "QO_beta";
        case FamilyTag::qo_gamma: return "QO_gamma";
        case FamilyTag::ps_alpha: return "PS_alpha";
        default: return "PS_beta";
    }
}

using FamilyDatum = std::variant<Subspace<Fp>, FlagPair<Fp>>;

inline bool datum_less(const FamilyDatum& a, const FamilyDatum& b) {
    if (a.index() != b.index()) return a.index() < b.index();
    if (a.index() == 0) return std::get<0>(a) < std::get<0>(b);
    return std::get<1>(a) < std::get<1>(b);
}

struct FamilyMember {
    FamilyTag tag;
    FamilyDatum datum;
    std::vector<Subspace<Fp>> points;  // sorted, materialized over GF(p)

    bool operator==(const FamilyMember& o) const {
        return tag == o.tag && !datum_less(datum, o.datum) && !datum_less(o.datum, datum);
    }
};

/// Tag admissibility on a host descriptor.
inline void validate_tag(const GrassDesc<Fp>& d, FamilyTag tag) {
    d.validate();
    std::size_t n = d.n_iso();
    bool odd = d.dim_v() % 2 == 1;
    switch (tag) {
        case FamilyTag::po_alpha:
            if (d.kind != GrassKind::ortho) throw InvalidDescriptor("PO_alpha lives on orthogonal hosts");
            if (d.k == n && !odd) throw InvalidDescriptor("PO_alpha at k = n needs odd dim V");
            break;
        case FamilyTag::po_beta:
            if (d.kind != GrassKind::ortho || !odd)
                throw InvalidDescriptor("PO_beta lives on odd dimensional orthogonal hosts");
            break;
        case FamilyTag::qo_beta:
            if (d.kind != GrassKind::ortho) throw InvalidDescriptor("QO_beta lives on orthogonal hosts");
            break;
        case FamilyTag::qo_gamma:
            if (d.kind != GrassKind::ortho) throw InvalidDescriptor("QO_gamma lives on orthogonal hosts");
            if (d.k < 2 || d.k + 2 > n) throw InvalidDescriptor("QO_gamma needs 2 <= k <= floor(dimV/2) - 2");
            break;
        case FamilyTag::ps_alpha:
            if (d.kind != GrassKind::symp) throw InvalidDescriptor("PS_alpha lives on symplectic hosts");
            if (d.k + 1 > n) throw InvalidDescriptor("PS_alpha needs k <= n - 1");
            break;
        case FamilyTag::ps_beta:
            if (d.kind != GrassKind::symp) throw InvalidDescriptor("PS_beta lives on symplectic hosts");
            break;
    }
}

/// Expected cardinality of one member over GF(q): projective spaces by their
/// dimension, quadric members by the split quadric count of the quotient.
inline BigInt expected_member_count(const GrassDesc<Fp>& d, FamilyTag tag) {
    Int q = d.ctx();
    std::size_t n = d.n_iso();
    switch (tag) {
        case FamilyTag::po_alpha:
            // k = n: the member is a copy of P(V / V_n)
            if (d.k == n) return projective_space_points(d.dim_v() - n - 1, q);
            return projective_space_points(d.k, q);
        case FamilyTag::ps_alpha: return projective_space_points(d.k, q);
        case FamilyTag::po_beta: return projective_space_points(n - d.k, q);
        case FamilyTag::ps_beta: return projective_space_points(2 * (n - d.k) + 1, q);
        case FamilyTag::qo_beta: return split_quadric_points(d.dim_v() - 2 * (d.k - 1), q);
        case FamilyTag::qo_gamma: return gaussian_binomial(4, 2, q);
    }
    throw Error("unreachable");
}

/// Materializes the point set of one family member from its flag datum.
inline FamilyMember family_member(const GrassDesc<Fp>& d, FamilyTag tag, const FamilyDatum& datum) {
    validate_tag(d, tag);
    FamilyMember m{tag, datum, {}};
    auto need_subspace = [&]() -> const Subspace<Fp>& {
        if (!std::holds_alternative<Subspace<Fp>>(datum))
            throw InvalidDescriptor("family tag expects a subspace datum");
        return std::get<Subspace<Fp>>(datum);
    };
    auto need_flag = [&]() -> const FlagPair<Fp>& {
        if (!std::holds_alternative<FlagPair<Fp>>(datum))
            throw InvalidDescriptor("family tag expects a flag datum");
        return std::get<FlagPair<Fp>>(datum);
    };
    auto check_iso = [&](const Subspace<Fp>& s, std::size_t dim) {
        if (s.ambient_dim() != d.dim_v()) throw DimensionMismatch("datum ambient mismatch");
        if (s.dim() != dim) throw InvalidDescriptor("datum has the wrong dimension");
        if (!is_isotropic(d.space, s)) throw InvalidDescriptor("datum must be isotropic");
    };

    switch (tag) {
        case FamilyTag::ps_alpha: {
            const auto& v = need_subspace();
            check_iso(v, d.k + 1);
            m.points = detail::subspaces_within(v, d.k);
            break;
        }
        case FamilyTag::po_alpha: {
            const auto& v = need_subspace();
            if (d.k == d.n_iso() && d.dim_v() % 2 == 1) {
                // closure of {V' : dim(V' cap datum) = n-1}; the datum itself
                // is the extra point that completes the projective space
                check_iso(v, d.k);
                std::vector<Subspace<Fp>> pts;
                for (const auto& h : detail::subspaces_within(v, d.k - 1)) {
                    for (const auto& cand : detail::isotropic_lifts(d.space, h, 1)) {
                        pts.push_back(cand);
                    }
                }
                std::sort(pts.begin(), pts.end());
                pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
                m.points = std::move(pts);
            } else {
                check_iso(v, d.k + 1);
                m.points = detail::subspaces_within(v, d.k);
            }
            break;
        }
        case FamilyTag::ps_beta:
        case FamilyTag::qo_beta: {
            const auto& v = need_subspace();
            check_iso(v, d.k - 1);
            m.points = detail::isotropic_lifts(d.space, v, 1);
            break;
        }
        case FamilyTag::po_beta: {
            const auto& f = need_flag();
            check_iso(f.inner, d.k - 1);
            check_iso(f.outer, d.n_iso());
            QuotientSpace<Fp> q(f.outer, f.inner);
            for (const auto& l : enumerate_subspaces(q.dim(), 1, d.ctx())) m.points.push_back(q.lift(l));
            std::sort(m.points.begin(), m.points.end());
            break;
        }
        case FamilyTag::qo_gamma: {
            const auto& f = need_flag();
            check_iso(f.inner, d.k - 2);
            check_iso(f.outer, d.k + 2);
            QuotientSpace<Fp> q(f.outer, f.inner);
            for (const auto& l : enumerate_subspaces(q.dim(), 2, d.ctx())) m.points.push_back(q.lift(l));
            std::sort(m.points.begin(), m.points.end());
            break;
        }
    }
    if (BigInt(m.points.size()) != expected_member_count(d, tag))
        throw Error("family member cardinality does not match its model variety");
    return m;
}

/// Flag data of every member of the family, in deterministic order. Points
/// are not materialized; pass each datum through family_member on demand.
inline std::vector<FamilyDatum> enumerate_family_data(const GrassDesc<Fp>& d, FamilyTag tag,
                                                      BigInt cap = BigInt(2000000)) {
    validate_tag(d, tag);
    std::vector<FamilyDatum> out;
    auto push_iso = [&](std::size_t j) {
        for (auto& s : isotropic_subspaces(d.space, j, cap)) out.emplace_back(std::move(s));
    };
    switch (tag) {
        case FamilyTag::ps_alpha: push_iso(d.k + 1); break;
        case FamilyTag::po_alpha:
            if (d.k == d.n_iso() && d.dim_v() % 2 == 1) push_iso(d.k);
            else push_iso(d.k + 1);
            break;
        case FamilyTag::ps_beta:
        case FamilyTag::qo_beta: push_iso(d.k - 1); break;
        case FamilyTag::po_beta: {
            for (const auto& inner : isotropic_subspaces(d.space, d.k - 1, cap)) {
                for (const auto& outer : detail::isotropic_lifts(d.space, inner, d.n_iso() - d.k + 1)) {
                    out.emplace_back(FlagPair<Fp>(inner, outer));
                }
            }
            break;
        }
        case FamilyTag::qo_gamma: {
            for (const auto& inner : isotropic_subspaces(d.space, d.k - 2, cap)) {
                for (const auto& outer : detail::isotropic_lifts(d.space, inner, 4)) {
                    out.emplace_back(FlagPair<Fp>(inner, outer));
                }
            }
            break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Intersection typing

enum class IntersectKind { empty, point, line, higher };

struct IntersectType {
    IntersectKind kind;
    std::size_t higher_dim = 0;  // projective dimension of the Pluecker span

    bool operator==(const IntersectType&) const = default;
};

inline std::vector<Subspace<Fp>> sorted_intersection(const std::vector<Subspace<Fp>>& a,
                                                     const std::vector<Subspace<Fp>>& b) {
    std::vector<Subspace<Fp>> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline IntersectType intersect_type(const GrassDesc<Fp>& d, const FamilyMember& a,
                                    const FamilyMember& b) {
    auto pts = sorted_intersection(a.points, b.points);
    if (pts.empty()) return {IntersectKind::empty, 0};
    if (pts.size() == 1) return {IntersectKind::point, 0};
    auto line = pencil_line(d, pts[0], pts[1]);
    if (line && line->full && line->points == pts) return {IntersectKind::line, 0};
    Matrix<Fp> coords(pts.size(), plucker(pts[0]).size(), d.ctx());
    for (std::size_t i = 0; i < pts.size(); ++i) coords.set_row(i, plucker(pts[i]));
    return {IntersectKind::higher, rank(coords) - 1};
}

}  // namespace grex
