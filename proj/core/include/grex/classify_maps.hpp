#pragma once

// Desk-scale analysis of point maps between Grassmannians: the pencil-line
// linearity test, reconstruction of combination pipelines, classification of
// embeddings, general composition, and triangle completion for chains of
// standard extensions.

#include "grex/embeddings.hpp"

namespace grex {

// ---------------------------------------------------------------------------
// Linearity: injective and every pencil line maps onto a pencil line.

inline bool is_linear(const PointMap& m, BigInt cap = BigInt(2000000)) {
    if (!m.total()) throw Error("is_linear needs a total point map");
    if (!m.injective()) return false;
    for (const auto& line : enumerate_lines(m.source, cap)) {
        std::vector<Subspace<Fp>> imgs;
        imgs.reserve(line.points.size());
        for (const auto& p : line.points) imgs.push_back(m.image_of(p));
        std::sort(imgs.begin(), imgs.end());
        auto target_line = pencil_line(m.target, imgs[0], imgs[1]);
        if (!target_line || !target_line->full || target_line->points != imgs) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Combination reconstruction

namespace detail {

/// Rows pairing invertibly against `iso_rows` inside perp(w), found through
/// the quotient by w; together with iso_rows they span a nondegenerate space.
inline std::optional<Matrix<Fp>> pairing_partners(const FormedSpace<Fp>& sp, const Subspace<Fp>& w,
                                                  const Matrix<Fp>& iso_rows) {
    Int p = sp.ctx;
    QuotientForm<Fp> qf = induced_quotient_form(sp, w);
    Matrix<Fp> coords(iso_rows.rows(), qf.space.dim, p);
    for (std::size_t i = 0; i < iso_rows.rows(); ++i)
        coords.set_row(i, qf.quotient.project_vector(iso_rows.row(i)));
    // partners d with <a_i, d_j> = delta_ij in the quotient form
    auto sol = solve_columns(coords * qf.space.gram(), Matrix<Fp>::identity(iso_rows.rows(), p));
    if (!sol) return std::nullopt;
    return sol->transpose() * qf.quotient.comp();  // lift to the big ambient
}

}  // namespace detail

/// Try to present a point map between isotropic Grassmannians of one kind as
/// a tautological-plain-isotropic-standard pipeline.
inline std::optional<CombinationDatum<Fp>> reconstruct_combination(const PointMap& m) {
    if (m.source.kind == GrassKind::plain || m.source.kind != m.target.kind) return std::nullopt;
    if (!m.total() || !m.injective() || m.pairs.empty()) return std::nullopt;
    Int p = m.source.ctx();
    std::size_t dimv = m.source.dim_v();

    Subspace<Fp> w = m.pairs.front().second;
    Subspace<Fp> u = m.pairs.front().second;
    for (const auto& [s, t] : m.pairs) {
        w = intersect(w, t);
        u = sum(u, t);
    }
    if (!is_isotropic(m.target.space, u)) return std::nullopt;
    std::size_t wdim = w.dim();
    if (m.target.k < wdim) return std::nullopt;
    std::size_t l = m.target.k - wdim;
    QuotientSpace<Fp> q(u, w);
    std::size_t a = q.dim();
    if (a != dimv) return std::nullopt;

    std::vector<std::pair<Subspace<Fp>, Subspace<Fp>>> straight_pairs, dual_pairs;
    for (const auto& [s, t] : m.pairs) {
        Subspace<Fp> psi = q.project(t);
        straight_pairs.emplace_back(s, psi);
        dual_pairs.emplace_back(perp(m.source.space, s), psi);
    }

    bool dual = false;
    std::optional<Matrix<Fp>> j;
    if (l == m.source.k) {
        j = detail::solve_point_linear(straight_pairs, dimv, a, p);
    }
    if (!j && l == dimv - m.source.k) {
        j = detail::solve_point_linear(dual_pairs, dimv, a, p);
        dual = j.has_value();
    }
    if (!j) return std::nullopt;

    // chart: quotient coordinates -> canonical coordinates of a lift A of U/W
    Subspace<Fp> a_lift = Subspace<Fp>::from_rows(q.comp());
    Matrix<Fp> chart = detail::coords_in(a_lift.basis(), q.comp());
    Matrix<Fp> j_chart = *j * chart;
    auto j_inv = inverse(j_chart);
    if (!j_inv) return std::nullopt;

    // hyperbolic partners make A + A' nondegenerate while staying inside
    // perp(W), so the final step has an honest formed source
    auto partners = detail::pairing_partners(m.target.space, w, a_lift.basis());
    if (!partners) return std::nullopt;
    Matrix<Fp> t_rows = Matrix<Fp>::vstack(a_lift.basis(), *partners);
    if (rank(t_rows) != 2 * a) return std::nullopt;
    Matrix<Fp> gram_t = t_rows * m.target.space.gram() * t_rows.transpose();
    FormedSpace<Fp> mid_space{2 * a, p, BilinearForm<Fp>{m.target.space.kind(), gram_t}};

    try {
        mid_space.validate();
        std::size_t mid_k = dual ? a - m.source.k : m.source.k;
        GrassDesc<Fp> mid_desc{m.source.kind, mid_k, mid_space};
        mid_desc.validate();

        // plain step: an isomorphism of plain Grassmannians onto chart coords
        Matrix<Fp> fwd = dual ? m.source.space.gram() * *inverse(j_chart.transpose()) : j_chart;
        auto fwd_inv = inverse(fwd);
        if (!fwd_inv) return std::nullopt;
        StdExtDatum<Fp> plain_step{plain_desc<Fp>(m.source.k, dimv, p),
                                   plain_desc<Fp>(m.source.k, a, p),
                                   Subspace<Fp>::zero(a, p),
                                   Subspace<Fp>::full(a, p),
                                   *fwd_inv};
        plain_step.validate();

        Matrix<Fp> first_coords(a, 2 * a, p);
        for (std::size_t i = 0; i < a; ++i) first_coords.at(i, i) = Fp::one(p);
        IsoExtDatum<Fp> iso_step{dual ? IsoExtDatum<Fp>::Direction::dual
                                      : IsoExtDatum<Fp>::Direction::straight,
                                 plain_desc<Fp>(m.source.k, a, p), mid_desc,
                                 Subspace<Fp>::from_rows(first_coords)};
        iso_step.validate();

        // final step adds W under the chosen basis of A + A' + W
        Matrix<Fp> gen_rows = Matrix<Fp>::vstack(t_rows, w.basis());
        Subspace<Fp> u_f = Subspace<Fp>::from_rows(gen_rows);
        if (u_f.dim() != 2 * a + wdim) return std::nullopt;
        Matrix<Fp> proj(2 * a + wdim, 2 * a, p);
        for (std::size_t i = 0; i < 2 * a; ++i) proj.at(i, i) = Fp::one(p);
        Matrix<Fp> phi_f = detail::coords_in(gen_rows, u_f.basis()) * proj;
        StdExtDatum<Fp> final_step{mid_desc, m.target, w, u_f, phi_f};
        final_step.validate();

        CombinationDatum<Fp> combo{m.source, plain_step, iso_step, final_step};
        combo.validate();
        for (const auto& [s, t] : m.pairs) {
            if (apply(combo, s) != t) return std::nullopt;
        }
        return combo;
    } catch (const Error&) {
        return std::nullopt;
    }
}

// ---------------------------------------------------------------------------
// Classification

enum class EmbeddingClass {
    standard,
    combination,
    factors_projective,
    factors_quadric,
    factors_sub_grassmannian,
    unclassified,
};

inline const char* embedding_class_name(EmbeddingClass c) {
    switch (c) {
        case EmbeddingClass::standard: return "standard";
        case EmbeddingClass::combination: return "combination";
        case EmbeddingClass::factors_projective: return "factors_projective";
        case EmbeddingClass::factors_quadric: return "factors_quadric";
        case EmbeddingClass::factors_sub_grassmannian: return "factors_sub_grassmannian";
        default: return "unclassified";
    }
}

struct Classification {
    EmbeddingClass cls = EmbeddingClass::unclassified;
    std::optional<Extension<Fp>> extension;   // standard / combination witness
    std::optional<FamilyDatum> witness;       // containing member datum or max isotropic
    std::optional<FamilyTag> witness_tag;     // set for family members of isotropic hosts
    std::vector<std::string> warnings;
};

namespace detail {

inline Subspace<Fp> common_intersection(const PointMap& m) {
    Subspace<Fp> d = m.pairs.front().second;
    for (const auto& [s, t] : m.pairs) d = intersect(d, t);
    return d;
}

inline Subspace<Fp> common_span(const PointMap& m) {
    Subspace<Fp> u = m.pairs.front().second;
    for (const auto& [s, t] : m.pairs) u = sum(u, t);
    return u;
}

inline bool all_images_in(const PointMap& m, const std::vector<Subspace<Fp>>& sorted_points) {
    for (const auto& [s, t] : m.pairs) {
        if (!std::binary_search(sorted_points.begin(), sorted_points.end(), t)) return false;
    }
    return true;
}

/// Projective family member of the target containing the whole image, if any.
inline std::optional<std::pair<FamilyTag, FamilyDatum>> projective_hull(const PointMap& m) {
    const GrassDesc<Fp>& d = m.target;
    std::size_t kp = d.k;
    Subspace<Fp> span = common_span(m);
    Subspace<Fp> inter = common_intersection(m);

    if (d.kind == GrassKind::symp) {
        // alpha: everything below one isotropic (k'+1)-space
        if (kp + 1 <= d.n_iso() && span.dim() <= kp + 1 && is_isotropic(d.space, span)) {
            if (auto v = isotropic_complete(d.space, span, kp + 1))
                return std::make_pair(FamilyTag::ps_alpha, FamilyDatum(*v));
        }
        // beta: everything between one isotropic (k'-1)-space and its perp
        if (kp >= 1 && inter.dim() >= kp - 1) {
            for (const auto& s : detail::subspaces_within(inter, kp - 1)) {
                auto member = family_member(d, FamilyTag::ps_beta, s);
                if (all_images_in(m, member.points)) return std::make_pair(FamilyTag::ps_beta, FamilyDatum(s));
            }
        }
        return std::nullopt;
    }
    if (d.kind == GrassKind::ortho) {
        bool odd = d.dim_v() % 2 == 1;
        if (kp + 1 <= d.n_iso() && span.dim() <= kp + 1 && is_isotropic(d.space, span) &&
            !(d.dim_v() % 2 == 0 && kp + 1 >= d.n_iso() - 1)) {
            if (auto v = isotropic_complete(d.space, span, kp + 1))
                return std::make_pair(FamilyTag::po_alpha, FamilyDatum(*v));
        }
        if (odd && kp == d.n_iso()) {
            // spaces meeting a common maximal isotropic one in a hyperplane
            auto seed = family_member(d, FamilyTag::po_alpha, m.pairs.front().second);
            for (const auto& cand : seed.points) {
                bool ok = true;
                for (const auto& [s, t] : m.pairs) {
                    if (intersect(cand, t).dim() + 1 < d.k) {
                        ok = false;
                        break;
                    }
                }
                if (ok) return std::make_pair(FamilyTag::po_alpha, FamilyDatum(cand));
            }
        }
        if (odd && kp >= 1 && inter.dim() >= kp - 1 && is_isotropic(d.space, span)) {
            if (auto vn = isotropic_complete(d.space, span, d.n_iso())) {
                for (const auto& s : detail::subspaces_within(inter, kp - 1)) {
                    FlagPair<Fp> flag(s, *vn);
                    auto member = family_member(d, FamilyTag::po_beta, flag);
                    if (all_images_in(m, member.points))
                        return std::make_pair(FamilyTag::po_beta, FamilyDatum(flag));
                }
            }
        }
        return std::nullopt;
    }
    // plain target: below a (k'+1)-space or above a (k'-1)-space
    if (kp + 1 <= d.dim_v() && span.dim() <= kp + 1) {
        auto v = span;
        for (std::size_t i = 0; i < d.dim_v() && v.dim() < kp + 1; ++i) {
            Matrix<Fp> e(1, d.dim_v(), d.ctx());
            e.at(0, i) = Fp::one(d.ctx());
            auto cand = sum(v, Subspace<Fp>::from_rows(e));
            if (cand.dim() > v.dim()) v = cand;
        }
        return std::make_pair(FamilyTag::ps_alpha, FamilyDatum(v));  // tag unused for plain hosts
    }
    if (kp >= 1 && inter.dim() >= kp - 1) {
        auto s = detail::subspaces_within(inter, kp - 1);
        if (!s.empty()) return std::make_pair(FamilyTag::ps_beta, FamilyDatum(s[0]));
    }
    return std::nullopt;
}

}  // namespace detail

/// Classify a linear point map, most informative class first: standard
/// extension, combination, then the factor-through fallbacks.
inline Classification classify_embedding(const PointMap& m, BigInt cap = BigInt(2000000)) {
    (void)cap;
    Classification out;
    if (m.pairs.empty()) throw Error("classify_embedding needs a nonempty map");

    if (m.source.kind == GrassKind::ortho && m.target.kind == GrassKind::ortho) {
        std::size_t n = m.source.n_iso(), np = m.target.n_iso();
        bool inner = m.source.k + 3 <= n && m.target.k + 3 <= np;
        bool outer = (np - m.target.k <= n - m.source.k) && (n - m.source.k <= 2) &&
                     m.source.dim_v() % 2 == 1 && m.target.dim_v() % 2 == 1;
        if (!inner && !outer)
            out.warnings.push_back("orthogonal pair outside the classified parameter range");
    }

    if (m.source.kind == m.target.kind) {
        try {
            out.cls = EmbeddingClass::standard;
            out.extension = Extension<Fp>(recover_triple(m));
            return out;
        } catch (const NotStandardExtension&) {
        }
        if (m.source.kind != GrassKind::plain) {
            if (auto combo = reconstruct_combination(m)) {
                out.cls = EmbeddingClass::combination;
                out.extension = Extension<Fp>(*combo);
                return out;
            }
        }
    }

    if (auto hull = detail::projective_hull(m)) {
        out.cls = EmbeddingClass::factors_projective;
        out.witness = hull->second;
        if (m.target.kind != GrassKind::plain) out.witness_tag = hull->first;
        return out;
    }

    if (m.target.kind == GrassKind::ortho && m.target.k >= 1) {
        Subspace<Fp> inter = detail::common_intersection(m);
        if (inter.dim() >= m.target.k - 1) {
            auto subs = detail::subspaces_within(inter, m.target.k - 1);
            if (!subs.empty()) {
                auto member = family_member(m.target, FamilyTag::qo_beta, subs[0]);
                if (detail::all_images_in(m, member.points)) {
                    out.cls = EmbeddingClass::factors_quadric;
                    out.witness = FamilyDatum(subs[0]);
                    out.witness_tag = FamilyTag::qo_beta;
                    return out;
                }
            }
        }
    }

    if (m.target.kind == GrassKind::ortho) {
        Subspace<Fp> span = detail::common_span(m);
        if (is_isotropic(m.target.space, span)) {
            if (auto vmax = isotropic_complete(m.target.space, span, m.target.n_iso())) {
                out.cls = EmbeddingClass::factors_sub_grassmannian;
                out.witness = FamilyDatum(*vmax);
                return out;
            }
        }
    }

    out.cls = EmbeddingClass::unclassified;
    return out;
}

// ---------------------------------------------------------------------------
// General composition

/// Composite of two extensions. Standard pairs of one kind compose exactly;
/// everything else is rebuilt from the composite point map, which needs a
/// finite field and desk-scale sources.
inline Extension<Fp> compose(const Extension<Fp>& e1, const Extension<Fp>& e2,
                             BigInt cap = BigInt(2000000)) {
    if (e1.target() != e2.source())
        throw InvalidDescriptor("compose: endpoints do not chain");
    if (const auto* s1 = e1.as_standard()) {
        if (const auto* s2 = e2.as_standard()) return Extension<Fp>(compose_std(*s1, *s2));
    }
    PointMap m;
    m.source = e1.source();
    m.target = e2.target();
    for (const auto& p : enumerate_points(m.source, cap)) m.pairs.emplace_back(p, apply(e2, apply(e1, p)));
    m.sort_pairs();
    try {
        return Extension<Fp>(recover_triple(m));
    } catch (const NotStandardExtension&) {
    }
    if (auto combo = reconstruct_combination(m)) return Extension<Fp>(*combo);
    throw Infeasible("composite is neither a standard extension nor a combination");
}

// ---------------------------------------------------------------------------
// Triangle completion

/// Given f : G -> G' and phi : G -> G~ with the same source and k~ > k',
/// produce g : G' -> G~ with g o f = phi. The epimorphism between the U
/// spaces is a deterministic particular solution; the embedding of the new
/// complement is completed greedily (with hyperbolic pairing constraints in
/// the isotropic case).
inline StdExtDatum<Fp> complete_triangle(const StdExtDatum<Fp>& f, const StdExtDatum<Fp>& phi,
                                         BigInt verify_cap = BigInt(2000000)) {
    f.validate();
    phi.validate();
    if (f.source != phi.source) throw InvalidDescriptor("triangle legs must share the source");
    if (f.target.kind != phi.target.kind) throw InvalidDescriptor("triangle legs must share the kind");
    if (phi.target.k <= f.target.k) throw InvalidDescriptor("triangle completion needs k~ > k'");
    bool iso = f.source.kind != GrassKind::plain;
    Int np = static_cast<Int>(f.target.dim_v()), kp = static_cast<Int>(f.target.k);
    Int nt = static_cast<Int>(phi.target.dim_v()), kt = static_cast<Int>(phi.target.k);
    if (!iso && nt - kt < np - kp) throw Infeasible("no room: codimension would shrink");
    if (iso && nt - 2 * kt < np - 2 * kp) throw Infeasible("no room: isotropic codimension would shrink");

    Int p = f.source.ctx();
    std::size_t dimv = f.source.dim_v();
    std::size_t uf = f.u.dim(), uphi = phi.u.dim();

    // section of f's surjection and the particular epimorphism U_phi -> U_f
    auto st = solve_columns(f.phi_bar.transpose(), Matrix<Fp>::identity(dimv, p));
    if (!st) throw Error("surjection has no section");
    Matrix<Fp> section = st->transpose();  // dimv x uf
    Matrix<Fp> e0 = phi.phi_bar * section;

    Matrix<Fp> kphi = kernel(phi.phi_bar).basis();  // wphi x uphi
    Matrix<Fp> kf = kernel(f.phi_bar).basis();      // wf x uf
    Matrix<Fp> comp_k = greedy_complement(Subspace<Fp>::from_rows(kphi), Subspace<Fp>::full(uphi, p));
    Matrix<Fp> stack = Matrix<Fp>::vstack(kphi, comp_k);
    auto stack_inv = inverse(stack);
    if (!stack_inv) throw Error("kernel complement is singular");
    Matrix<Fp> proj_w = stack_inv->cols_slice(0, kphi.rows());  // uphi x wphi
    Matrix<Fp> d(kphi.rows(), uf, p);
    for (std::size_t i = 0; i < kf.rows() && i < kphi.rows(); ++i) d.set_row(i, kf.row(i));
    Matrix<Fp> eps = e0 + proj_w * d;  // uphi x uf
    if (eps * f.phi_bar != phi.phi_bar) throw Error("epimorphism construction failed");
    if (rank(eps) != uf) throw Error("epimorphism is not surjective");

    Subspace<Fp> wg_coords = kernel(eps);
    Subspace<Fp> wg = Subspace<Fp>::from_rows(wg_coords.basis() * phi.u.basis());
    auto sg = solve_columns(eps.transpose(), Matrix<Fp>::identity(uf, p));
    if (!sg) throw Error("epimorphism has no section");
    Matrix<Fp> sigma = sg->transpose();  // uf x uphi

    std::size_t ntil = phi.target.dim_v();
    const Matrix<Fp>* gt = iso ? &phi.target.space.gram() : nullptr;
    const Matrix<Fp>* gp = iso ? &f.target.space.gram() : nullptr;

    // image rows of W_g + V' inside the big space, with their projections
    Matrix<Fp> zrows(0, ntil, p);
    Matrix<Fp> pirows(0, f.target.dim_v(), p);
    auto push = [&](const std::vector<Fp>& z, const std::vector<Fp>& pi) {
        Matrix<Fp> zr(1, ntil, p);
        zr.set_row(0, z);
        zrows = Matrix<Fp>::vstack(zrows, zr);
        Matrix<Fp> pr(1, f.target.dim_v(), p);
        pr.set_row(0, pi);
        pirows = Matrix<Fp>::vstack(pirows, pr);
    };
    std::vector<Fp> zerov(f.target.dim_v(), Fp::zero(p));
    Matrix<Fp> wg_rows = wg_coords.basis() * phi.u.basis();
    for (std::size_t i = 0; i < wg_rows.rows(); ++i) push(wg_rows.row(i), zerov);
    Matrix<Fp> uf_lift = sigma * phi.u.basis();  // uf x ntil
    for (std::size_t i = 0; i < uf_lift.rows(); ++i) push(uf_lift.row(i), f.u.basis().row(i));

    Matrix<Fp> comp_v = greedy_complement(f.u, Subspace<Fp>::full(f.target.dim_v(), p));
    for (std::size_t j = 0; j < comp_v.rows(); ++j) {
        std::vector<Fp> dj = comp_v.row(j);
        std::vector<Fp> y;
        if (!iso) {
            // greedy standard basis completion
            bool found = false;
            for (std::size_t i = 0; i < ntil && !found; ++i) {
                std::vector<Fp> cand(ntil, Fp::zero(p));
                cand[i] = Fp::one(p);
                Matrix<Fp> c(1, ntil, p);
                c.set_row(0, cand);
                if (rank(Matrix<Fp>::vstack(zrows, c)) == zrows.rows() + 1) {
                    y = cand;
                    found = true;
                }
            }
            if (!found) throw Infeasible("no independent direction left in the big space");
        } else {
            // linear pairing constraints against every existing image row
            Matrix<Fp> a(zrows.rows(), ntil, p);
            Matrix<Fp> b(zrows.rows(), 1, p);
            for (std::size_t t = 0; t < zrows.rows(); ++t) {
                std::vector<Fp> z = zrows.row(t);
                std::vector<Fp> lhs(ntil, Fp::zero(p));
                for (std::size_t cc = 0; cc < ntil; ++cc) {
                    Fp acc = Fp::zero(p);
                    for (std::size_t dd = 0; dd < ntil; ++dd) acc += gt->at(cc, dd) * z[dd];
                    lhs[cc] = acc;
                }
                a.set_row(t, lhs);
                Fp rhs = Fp::zero(p);
                std::vector<Fp> pi = pirows.row(t);
                for (std::size_t cc = 0; cc < dj.size(); ++cc) {
                    if (dj[cc].is_zero()) continue;
                    Fp acc2 = Fp::zero(p);
                    for (std::size_t dd = 0; dd < dj.size(); ++dd) acc2 += gp->at(cc, dd) * pi[dd];
                    rhs += dj[cc] * acc2;
                }
                b.at(t, 0) = rhs;
            }
            auto part = solve_columns(a, b);
            if (!part) throw Infeasible("pairing constraints are inconsistent");
            std::vector<Fp> y0(ntil, Fp::zero(p));
            for (std::size_t i = 0; i < ntil; ++i) y0[i] = part->at(i, 0);
            Subspace<Fp> freedom = kernel(a.transpose());
            // self-pairing target (vanishes identically in the symplectic case)
            Fp want = Fp::zero(p);
            if (f.target.space.kind() == FormKind::symmetric) {
                for (std::size_t cc = 0; cc < dj.size(); ++cc) {
                    if (dj[cc].is_zero()) continue;
                    Fp acc2 = Fp::zero(p);
                    for (std::size_t dd = 0; dd < dj.size(); ++dd) acc2 += gp->at(cc, dd) * dj[dd];
                    want += dj[cc] * acc2;
                }
            }
            bool need_self = f.target.space.kind() == FormKind::symmetric;
            std::size_t fdim = freedom.dim();
            std::vector<Int> odo(fdim, 0);
            bool found = false;
            std::size_t tries = 0, try_cap = 2000000;
            while (!found) {
                std::vector<Fp> cand = y0;
                for (std::size_t i = 0; i < fdim; ++i) {
                    if (odo[i] == 0) continue;
                    Fp co(odo[i], p);
                    for (std::size_t cc = 0; cc < ntil; ++cc) cand[cc] += co * freedom.basis().at(i, cc);
                }
                bool ok = true;
                if (need_self) {
                    Fp self = Fp::zero(p);
                    for (std::size_t cc = 0; cc < ntil; ++cc) {
                        if (cand[cc].is_zero()) continue;
                        Fp acc2 = Fp::zero(p);
                        for (std::size_t dd = 0; dd < ntil; ++dd) acc2 += gt->at(cc, dd) * cand[dd];
                        self += cand[cc] * acc2;
                    }
                    ok = self == want;
                }
                if (ok) {
                    Matrix<Fp> c(1, ntil, p);
                    c.set_row(0, cand);
                    ok = rank(Matrix<Fp>::vstack(zrows, c)) == zrows.rows() + 1;
                }
                if (ok) {
                    y = cand;
                    found = true;
                    break;
                }
                // advance the odometer over the affine solution space
                std::size_t i = 0;
                while (i < fdim) {
                    if (++odo[i] < p) break;
                    odo[i] = 0;
                    ++i;
                }
                if (i == fdim || ++tries > try_cap)
                    throw Infeasible("no isotropy-compatible completion found");
            }
        }
        push(y, dj);
    }

    Subspace<Fp> ug = Subspace<Fp>::from_rows(zrows);
    if (ug.dim() != zrows.rows()) throw Infeasible("completion collapsed the embedded copy");
    Matrix<Fp> mg = detail::coords_in(zrows, ug.basis()) * pirows;
    StdExtDatum<Fp> g{f.target, phi.target, wg, ug, mg};
    g.validate();

    // exhaustive check of g o f = phi over the finite source
    BigInt count = grass_point_count(f.source.kind, f.source.k, f.source.dim_v(), p);
    if (count <= verify_cap) {
        for (const auto& pt : enumerate_points(f.source, verify_cap)) {
            if (apply(g, apply(f, pt)) != apply(phi, pt))
                throw Error("triangle completion failed the pointwise check");
        }
    }
    return g;
}

}  // namespace grex
