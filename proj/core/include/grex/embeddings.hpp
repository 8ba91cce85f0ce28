#pragma once

// Standard extensions, isotropic extensions and their combinations as
// executable data: application to points, recovery of the defining triple
// from a raw point map, composition, triangle completion, desk-scale
// linearity testing and classification of embeddings.

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>
#include <variant>
#include <vector>

#include "grex/grassmann.hpp"

namespace grex {

namespace detail {

template <class K>
std::string matrix_brief(const Matrix<K>& m) {
    std::ostringstream os;
    os << "[";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        os << (r ? ",[" : "[");
        for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? "," : "") << m.at(r, c).str();
        os << "]";
    }
    os << "]";
    return os.str();
}

/// Coordinates of the rows of `rows` with respect to the basis `basis`:
/// C with C * basis = rows. Throws when rows are not inside the span.
template <class K>
Matrix<K> coords_in(const Matrix<K>& basis, const Matrix<K>& rows) {
    auto sol = solve_columns(basis.transpose(), rows.transpose());
    if (!sol) throw DimensionMismatch("rows do not lie in the spanning set");
    return sol->transpose();
}

/// Scale so the first nonzero entry in row-major order becomes one.
template <class K>
Matrix<K> normalize_scalar(Matrix<K> m) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (!m.at(r, c).is_zero()) return m.scaled(m.at(r, c).inverse());
        }
    }
    return m;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Extension data

/// Triple (W < U, phi_bar) in the target ambient. phi_bar is written with
/// respect to the canonical (RREF) basis of U and maps U onto the source
/// coordinate space, surjective with kernel W.
template <class K>
struct StdExtDatum {
    GrassDesc<K> source;
    GrassDesc<K> target;
    Subspace<K> w;
    Subspace<K> u;
    Matrix<K> phi_bar;  // u.dim() x source.dim_v()

    Matrix<K> normalized_phi_bar() const { return detail::normalize_scalar(phi_bar); }

    void validate() const {
        source.validate();
        target.validate();
        if (source.kind != target.kind) throw InvalidDescriptor("standard extension must preserve the kind");
        if (w.ambient_dim() != target.dim_v() || u.ambient_dim() != target.dim_v())
            throw DimensionMismatch("extension data must live in the target ambient");
        if (!contains(u, w)) throw InvalidDescriptor("extension needs W inside U");
        if (target.k < source.k || w.dim() != target.k - source.k)
            throw InvalidDescriptor("dim W must equal k' - k");
        if (u.dim() != source.dim_v() + w.dim())
            throw InvalidDescriptor("dim U must equal dim V + dim W");
        if (phi_bar.rows() != u.dim() || phi_bar.cols() != source.dim_v())
            throw DimensionMismatch("phi_bar must map U onto the source space");
        if (rank(phi_bar) != source.dim_v()) throw InvalidDescriptor("phi_bar must be surjective");
        Subspace<K> ker = kernel(phi_bar);
        if (Subspace<K>::from_rows(ker.basis() * u.basis()) != w)
            throw InvalidDescriptor("kernel of phi_bar must be W");
        // growth inequalities: k' >= k and codimension never shrinks
        if (source.kind == GrassKind::plain) {
            if (target.dim_v() - target.k < source.dim_v() - source.k)
                throw InvalidDescriptor("extension shrinks the codimension");
        } else {
            if (static_cast<Int>(target.dim_v()) - 2 * static_cast<Int>(target.k) <
                static_cast<Int>(source.dim_v()) - 2 * static_cast<Int>(source.k))
                throw InvalidDescriptor("extension shrinks the isotropic codimension");
            if (!is_isotropic(target.space, w)) throw InvalidDescriptor("W must be isotropic");
            // the pullback of the source form along phi_bar agrees with the
            // restriction of the target form to U
            Matrix<K> restricted = u.basis() * target.space.gram() * u.basis().transpose();
            Matrix<K> pulled = phi_bar * source.space.gram() * phi_bar.transpose();
            if (restricted != pulled)
                throw InvalidDescriptor("phi_bar does not intertwine the forms");
        }
    }
};

/// The identity extension of a descriptor.
template <class K>
StdExtDatum<K> identity_extension(const GrassDesc<K>& d) {
    StdExtDatum<K> e{d, d, Subspace<K>::zero(d.dim_v(), d.ctx()), Subspace<K>::full(d.dim_v(), d.ctx()),
                     Matrix<K>::identity(d.dim_v(), d.ctx())};
    e.validate();
    return e;
}

template <class K>
Subspace<K> apply(const StdExtDatum<K>& e, const Subspace<K>& p) {
    if (!is_point(e.source, p)) throw InvalidDescriptor("apply: not a point of the source");
    Subspace<K> pre = preimage(e.phi_bar, p);
    Subspace<K> out = Subspace<K>::from_rows(pre.basis() * e.u.basis());
    if (out.dim() != e.target.k) throw Error("extension image has the wrong dimension");
    return out;
}

/// Natural inclusion of a plain Grassmannian of an isotropic subspace, either
/// directly or through the dual identification.
template <class K>
struct IsoExtDatum {
    enum class Direction { straight, dual };
    Direction direction;
    GrassDesc<K> source;  // plain G(k, dim V_iso)
    GrassDesc<K> target;  // isotropic kind
    Subspace<K> v_iso;    // isotropic subspace of the target space

    void validate() const {
        source.validate();
        target.validate();
        if (source.kind != GrassKind::plain) throw InvalidDescriptor("isotropic extension starts plain");
        if (target.kind == GrassKind::plain) throw InvalidDescriptor("isotropic extension ends isotropic");
        if (v_iso.ambient_dim() != target.dim_v()) throw DimensionMismatch("V_iso ambient mismatch");
        if (v_iso.dim() != source.dim_v())
            throw InvalidDescriptor("V_iso must have the source's ambient dimension");
        if (!is_isotropic(target.space, v_iso)) throw InvalidDescriptor("V_iso must be isotropic");
        std::size_t expect = direction == Direction::straight ? source.k : v_iso.dim() - source.k;
        if (target.k != expect) throw InvalidDescriptor("isotropic extension k mismatch");
    }
};

template <class K>
Subspace<K> apply(const IsoExtDatum<K>& e, const Subspace<K>& p) {
    if (!is_point(e.source, p)) throw InvalidDescriptor("apply: not a point of the source");
    Matrix<K> rows = e.direction == IsoExtDatum<K>::Direction::straight
                         ? p.basis()
                         : annihilator(p).basis();
    return Subspace<K>::from_rows(rows * e.v_iso.basis());
}

/// Tautological inclusion followed by a plain standard extension, an
/// isotropic extension, and a final standard extension of isotropic spaces.
template <class K>
struct CombinationDatum {
    GrassDesc<K> source;  // isotropic kind
    StdExtDatum<K> plain_step;
    IsoExtDatum<K> iso_step;
    StdExtDatum<K> final_step;

    const GrassDesc<K>& target() const { return final_step.target; }

    void validate() const {
        source.validate();
        if (source.kind == GrassKind::plain) throw InvalidDescriptor("combination sources are isotropic");
        plain_step.validate();
        iso_step.validate();
        final_step.validate();
        if (plain_step.source.kind != GrassKind::plain)
            throw InvalidDescriptor("combination middle step must be plain");
        if (plain_step.source.k != source.k || plain_step.source.dim_v() != source.dim_v())
            throw InvalidDescriptor("combination does not chain at the tautological step");
        if (iso_step.source != plain_step.target)
            throw InvalidDescriptor("combination does not chain at the isotropic step");
        if (final_step.source != iso_step.target)
            throw InvalidDescriptor("combination does not chain at the final step");
        if (final_step.target.kind != source.kind)
            throw InvalidDescriptor("combination must preserve the isotropic kind");
    }
};

template <class K>
Subspace<K> apply(const CombinationDatum<K>& e, const Subspace<K>& p) {
    if (!is_point(e.source, p)) throw InvalidDescriptor("apply: not a point of the source");
    Subspace<K> x = apply(e.plain_step, p);
    x = apply(e.iso_step, x);
    return apply(e.final_step, x);
}

/// Any of the three embedding data, with uniform endpoints and application.
template <class K>
struct Extension {
    std::variant<StdExtDatum<K>, IsoExtDatum<K>, CombinationDatum<K>> data;

    Extension(StdExtDatum<K> e) : data(std::move(e)) {}
    Extension(IsoExtDatum<K> e) : data(std::move(e)) {}
    Extension(CombinationDatum<K> e) : data(std::move(e)) {}

    const GrassDesc<K>& source() const {
        return std::visit([](const auto& x) -> const GrassDesc<K>& { return x.source; }, data);
    }
    const GrassDesc<K>& target() const {
        if (const auto* c = std::get_if<CombinationDatum<K>>(&data)) return c->target();
        if (const auto* s = std::get_if<StdExtDatum<K>>(&data)) return s->target;
        return std::get<IsoExtDatum<K>>(data).target;
    }
    const StdExtDatum<K>* as_standard() const { return std::get_if<StdExtDatum<K>>(&data); }
    const CombinationDatum<K>* as_combination() const { return std::get_if<CombinationDatum<K>>(&data); }
    void validate() const {
        std::visit([](const auto& x) { x.validate(); }, data);
    }
};

template <class K>
Subspace<K> apply(const Extension<K>& e, const Subspace<K>& p) {
    return std::visit([&](const auto& x) { return apply(x, p); }, e.data);
}

// ---------------------------------------------------------------------------
// Point maps (finite fields)

/// Total association list from source points to target points.
struct PointMap {
    GrassDesc<Fp> source;
    GrassDesc<Fp> target;
    std::vector<std::pair<Subspace<Fp>, Subspace<Fp>>> pairs;  // sorted by source point

    void sort_pairs() {
        std::sort(pairs.begin(), pairs.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    }

    const Subspace<Fp>& image_of(const Subspace<Fp>& s) const {
        auto it = std::lower_bound(pairs.begin(), pairs.end(), s,
                                   [](const auto& pr, const Subspace<Fp>& key) { return pr.first < key; });
        if (it == pairs.end() || it->first != s) throw Error("point map is not defined at this point");
        return it->second;
    }

    bool total() const { return BigInt(pairs.size()) == grass_point_count(source.kind, source.k, source.dim_v(), source.ctx()); }

    bool injective() const {
        std::vector<Subspace<Fp>> imgs;
        imgs.reserve(pairs.size());
        for (const auto& pr : pairs) imgs.push_back(pr.second);
        std::sort(imgs.begin(), imgs.end());
        return std::adjacent_find(imgs.begin(), imgs.end()) == imgs.end();
    }
};

/// Evaluate an extension on every source point.
inline PointMap point_map_of(const Extension<Fp>& e, BigInt cap = BigInt(2000000)) {
    PointMap m;
    m.source = e.source();
    m.target = e.target();
    for (const auto& p : enumerate_points(m.source, cap)) m.pairs.emplace_back(p, apply(e, p));
    m.sort_pairs();
    return m;
}

/// Closed-form map V |-> V + W or V-perp + W under an embedding of the source
/// ambient into the target ambient (rows of part_injection).
inline PointMap closed_form_point_map(const GrassDesc<Fp>& source, const GrassDesc<Fp>& target,
                                      bool take_perp, const Subspace<Fp>& w,
                                      const Matrix<Fp>& part_injection, BigInt cap = BigInt(2000000)) {
    PointMap m;
    m.source = source;
    m.target = target;
    for (const auto& p : enumerate_points(source, cap)) {
        Matrix<Fp> rows = take_perp ? perp(source.space, p).basis() : p.basis();
        Subspace<Fp> img = Subspace<Fp>::from_rows(
            Matrix<Fp>::vstack(rows * part_injection, w.basis()));
        if (!is_point(target, img)) throw InvalidDescriptor("closed form image leaves the target");
        m.pairs.emplace_back(p, img);
    }
    m.sort_pairs();
    return m;
}

// ---------------------------------------------------------------------------
// Triple recovery

namespace detail {

/// Solve for an n x m matrix J with (row space of S) * J = (row space of T)
/// for every pair, unique up to scalar. Returns the normalized solution or
/// nullopt (no solution / ambiguous solve / reproduction failure).
///
/// The constraint system is consumed in a coprime-stride order (neighbours in
/// canonical order contribute nearly dependent rows) and kept row reduced, so
/// the working matrix never exceeds the number of unknowns.
inline std::optional<Matrix<Fp>> solve_point_linear(
    const std::vector<std::pair<Subspace<Fp>, Subspace<Fp>>>& pairs, std::size_t n, std::size_t m,
    Int p) {
    std::size_t unknowns = n * m;
    std::size_t count = pairs.size();
    std::size_t stride = std::max<std::size_t>(1, (count * 61) / 100);
    while (stride > 1 && std::gcd(stride, count) != 1) --stride;

    Matrix<Fp> reduced(0, unknowns, p);
    std::size_t have = 0;
    for (std::size_t step = 0; step < count; ++step) {
        const auto& [s, t] = pairs[(step * stride) % count];
        Matrix<Fp> ann = annihilator(t).basis();  // a x m
        const Matrix<Fp>& bs = s.basis();         // k x n
        Matrix<Fp> block(bs.rows() * ann.rows(), unknowns, p);
        for (std::size_t i = 0; i < bs.rows(); ++i) {
            for (std::size_t a = 0; a < ann.rows(); ++a) {
                for (std::size_t c = 0; c < n; ++c) {
                    if (bs.at(i, c).is_zero()) continue;
                    for (std::size_t d = 0; d < m; ++d) {
                        block.at(i * ann.rows() + a, c * m + d) = bs.at(i, c) * ann.at(a, d);
                    }
                }
            }
        }
        Matrix<Fp> next = Matrix<Fp>::vstack(reduced, block);
        std::size_t r = rref_in_place(next).size();
        reduced = next.rows_slice(0, r);
        have = r;
        if (have >= unknowns - 1) break;
    }
    if (have < unknowns - 1) return std::nullopt;  // ambiguous or empty
    Subspace<Fp> null = kernel(reduced.transpose());
    if (null.dim() != 1) return std::nullopt;
    Matrix<Fp> j(n, m, p);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < m; ++d) j.at(c, d) = null.basis().at(0, c * m + d);
    j = normalize_scalar(std::move(j));
    for (const auto& [s, t] : pairs) {
        if (Subspace<Fp>::from_rows(s.basis() * j) != t) return std::nullopt;
    }
    return j;
}

}  // namespace detail

/// Recover the defining triple of a standard extension from its point map:
/// W as the intersection of all images, U as their span, phi_bar from the
/// pointwise constraints, then validate that the triple reproduces the map.
inline StdExtDatum<Fp> recover_triple(const PointMap& m) {
    if (m.pairs.empty() || !m.total()) throw Error("recover_triple needs a total point map");
    if (!m.injective())
        throw NotStandardExtension("point map is not injective", "");
    if (m.source.kind != m.target.kind)
        throw NotStandardExtension("standard extensions do not change the kind", "");
    Int p = m.source.ctx();

    Subspace<Fp> w = m.pairs.front().second;
    Subspace<Fp> u = m.pairs.front().second;
    for (const auto& [s, t] : m.pairs) {
        w = intersect(w, t);
        u = sum(u, t);
    }
    std::size_t dimv = m.source.dim_v();
    if (w.dim() != m.target.k - m.source.k || u.dim() != dimv + w.dim())
        throw NotStandardExtension(
            "span/intersection dimensions do not match a standard extension (dim W = " +
                std::to_string(w.dim()) + ", dim U = " + std::to_string(u.dim()) + ")",
            "");

    // phi_bar in U-coordinates: images pulled into U, sources as constraints
    std::vector<std::pair<Subspace<Fp>, Subspace<Fp>>> coord_pairs;
    coord_pairs.reserve(m.pairs.size());
    for (const auto& [s, t] : m.pairs) {
        Matrix<Fp> c = detail::coords_in(u.basis(), t.basis());
        coord_pairs.emplace_back(Subspace<Fp>::from_rows(c), s);
    }
    auto phi = detail::solve_point_linear(coord_pairs, u.dim(), dimv, p);
    if (!phi)
        throw NotStandardExtension("pointwise constraints do not determine a surjection onto the source",
                                   detail::matrix_brief(m.pairs.front().first.basis()));

    // phi_bar is determined only up to a scalar; pick the representative that
    // satisfies the form identity exactly. A non-square proportionality
    // factor means the map is conformal but not standard.
    if (m.source.kind != GrassKind::plain) {
        Matrix<Fp> restricted = u.basis() * m.target.space.gram() * u.basis().transpose();
        Matrix<Fp> pulled = *phi * m.source.space.gram() * phi->transpose();
        std::optional<Fp> ratio;
        for (std::size_t r = 0; r < pulled.rows() && !ratio; ++r)
            for (std::size_t c = 0; c < pulled.cols() && !ratio; ++c)
                if (!pulled.at(r, c).is_zero()) ratio = restricted.at(r, c) / pulled.at(r, c);
        if (!ratio || pulled.scaled(*ratio) != restricted)
            throw NotStandardExtension("the forms are not proportional along the recovered map", "");
        auto root = detail::sqrt_mod(*ratio);
        if (!root)
            throw NotStandardExtension("the form twist is not a square; the map is conformal only", "");
        *phi = phi->scaled(*root);
    }

    StdExtDatum<Fp> e{m.source, m.target, w, u, *phi};
    try {
        e.validate();
    } catch (const Error& err) {
        throw NotStandardExtension(std::string("recovered triple is invalid: ") + err.what(), "");
    }
    for (const auto& [s, t] : m.pairs) {
        if (apply(e, s) != t)
            throw NotStandardExtension("recovered triple does not reproduce the map",
                                       detail::matrix_brief(s.basis()));
    }
    return e;
}

// ---------------------------------------------------------------------------
// Dualization of plain Grassmannians

template <class K>
GrassDesc<K> dualize_desc(const GrassDesc<K>& d) {
    if (d.kind != GrassKind::plain) throw InvalidDescriptor("dualize needs a plain Grassmannian");
    return plain_desc<K>(d.dim_v() - d.k, d.dim_v(), d.ctx());
}

/// Annihilator bijection G(k, V) <-> G(dim V - k, V*); involutive.
template <class K>
Subspace<K> dualize_point(const Subspace<K>& s) {
    return annihilator(s);
}

// ---------------------------------------------------------------------------
// Composition

/// Composite of two standard extensions of the same kind, again standard.
template <class K>
StdExtDatum<K> compose_std(const StdExtDatum<K>& e1, const StdExtDatum<K>& e2) {
    if (e1.target != e2.source) throw InvalidDescriptor("compose: endpoints do not chain");
    // U = everything in U2 that phi_bar_2 sends into U1
    Subspace<K> pre = preimage(e2.phi_bar, e1.u);
    Subspace<K> u = Subspace<K>::from_rows(pre.basis() * e2.u.basis());
    Matrix<K> in_u2 = detail::coords_in(e2.u.basis(), u.basis());
    Matrix<K> into_u1 = detail::coords_in(e1.u.basis(), in_u2 * e2.phi_bar);
    Matrix<K> phi = into_u1 * e1.phi_bar;
    Subspace<K> ker = kernel(phi);
    Subspace<K> w = Subspace<K>::from_rows(ker.basis() * u.basis());
    StdExtDatum<K> out{e1.source, e2.target, w, u, phi};
    out.validate();
    return out;
}

}  // namespace grex
