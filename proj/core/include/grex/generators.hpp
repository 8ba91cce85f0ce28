#pragma once

// Seeded random constructions: standard extensions, combination pipelines,
// and point maps that factor through projective spaces, quadrics, or a
// sub-Grassmannian of a maximal isotropic subspace. All randomness flows
// through the caller's engine so suites stay reproducible.

#include <random>

#include "grex/classify_maps.hpp"

namespace grex {

inline Matrix<Fp> random_matrix_fp(std::size_t r, std::size_t c, Int p, std::mt19937_64& rng) {
    std::uniform_int_distribution<Int> d(0, p - 1);
    Matrix<Fp> m(r, c, p);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = Fp(d(rng), p);
    return m;
}

inline Matrix<Fp> random_invertible(std::size_t n, Int p, std::mt19937_64& rng) {
    while (true) {
        Matrix<Fp> m = random_matrix_fp(n, n, p, rng);
        if (rank(m) == n) return m;
    }
}

/// Random isotropic subspace of the given dimension in a split formed space.
inline Subspace<Fp> random_isotropic(const FormedSpace<Fp>& sp, std::size_t dim,
                                     std::mt19937_64& rng) {
    auto s = isotropic_complete(sp, Subspace<Fp>::zero(sp.dim, sp.ctx), dim, &rng);
    if (!s) throw Infeasible("no isotropic subspace of the requested dimension");
    return *s;
}

/// Rebase a standard extension along an isometry of its target coordinates
/// (x |-> x * rmap with rmap intertwining the Grams).
inline StdExtDatum<Fp> transform_target(const StdExtDatum<Fp>& e, const GrassDesc<Fp>& new_target,
                                        const Matrix<Fp>& rmap) {
    auto rinv = inverse(rmap);
    if (!rinv) throw Error("target transform must be invertible");
    Subspace<Fp> w = Subspace<Fp>::from_rows(e.w.basis() * rmap);
    Subspace<Fp> u = Subspace<Fp>::from_rows(e.u.basis() * rmap);
    Matrix<Fp> coords = detail::coords_in(e.u.basis(), u.basis() * *rinv);
    StdExtDatum<Fp> out{e.source, new_target, w, u, coords * e.phi_bar};
    out.validate();
    return out;
}

/// Random standard extension between standard-form descriptors, built from a
/// random isotropic slot W, a random graph shear of the embedded source, a
/// random source isometry, and a random target isometry.
inline StdExtDatum<Fp> random_std_ext(GrassKind kind, std::size_t k, std::size_t dimv,
                                      std::size_t kp, std::size_t dimvp, Int p,
                                      std::mt19937_64& rng) {
    if (kp < k || dimvp < dimv) throw InvalidDescriptor("extension shapes must grow");
    std::size_t w_dim = kp - k;
    std::size_t hat = dimvp - dimv;
    if (kind == GrassKind::ortho && dimv % 2 == 1 && hat % 2 == 1)
        throw InvalidDescriptor("orthogonal extensions from odd to even dimensions leave the split class");
    GrassDesc<Fp> source = standard_desc<Fp>(kind, k, dimv, p);
    GrassDesc<Fp> target = standard_desc<Fp>(kind, kp, dimvp, p);

    // build in block coordinates V + What, move to the standard Gram after
    Matrix<Fp> inj_v(dimv, dimvp, p), inj_h(hat, dimvp, p);
    for (std::size_t i = 0; i < dimv; ++i) inj_v.at(i, i) = Fp::one(p);
    for (std::size_t i = 0; i < hat; ++i) inj_h.at(i, dimv + i) = Fp::one(p);

    Matrix<Fp> w_rows(w_dim, dimvp, p);
    Matrix<Fp> block_gram(0, 0, p);
    if (kind == GrassKind::plain) {
        Matrix<Fp> w_in_hat;
        do {
            w_in_hat = random_matrix_fp(w_dim, hat, p, rng);
        } while (rank(w_in_hat) != w_dim);
        w_rows = w_in_hat * inj_h;
    } else {
        FormKind fk = kind == GrassKind::ortho ? FormKind::symmetric : FormKind::symplectic;
        auto hat_space = standard_hyperbolic<Fp>(fk, hat, p);
        auto w_hat = random_isotropic(hat_space, w_dim, rng);
        w_rows = w_hat.basis() * inj_h;
        auto dec = split_sum(standard_hyperbolic<Fp>(fk, dimv, p), hat_space);
        block_gram = dec.total.gram();
    }
    Subspace<Fp> w = Subspace<Fp>::from_rows(w_rows);

    // U is the graph of a random shear into W, plus W itself
    Matrix<Fp> shear = random_matrix_fp(dimv, w_dim, p, rng);
    Matrix<Fp> graph = inj_v + shear * w_rows;
    Matrix<Fp> gens = Matrix<Fp>::vstack(graph, w_rows);
    Subspace<Fp> u = Subspace<Fp>::from_rows(gens);

    Matrix<Fp> g = kind == GrassKind::plain ? random_invertible(dimv, p, rng)
                                            : random_isometry(source.space, rng);
    Matrix<Fp> values = Matrix<Fp>::vstack(g, Matrix<Fp>(w_dim, dimv, p));
    Matrix<Fp> phi = detail::coords_in(gens, u.basis()) * values;

    if (kind == GrassKind::plain) {
        StdExtDatum<Fp> e{source, target, w, u, phi};
        // extra scramble of the target coordinates
        Matrix<Fp> t = random_invertible(dimvp, p, rng);
        e = transform_target(e, target, t);
        e.validate();
        return e;
    }

    // move from block-diagonal coordinates to the standard Gram, then apply
    // a random isometry of the standard target
    FormedSpace<Fp> block_space{dimvp, p, BilinearForm<Fp>{target.space.kind(), block_gram}};
    GrassDesc<Fp> block_target{kind, kp, block_space};
    StdExtDatum<Fp> e{source, block_target, w, u, phi};
    e.validate();
    Matrix<Fp> to_std = hyperbolic_basis(block_space);
    // rows of to_std satisfy T G_blk T^T = G_std; x |-> coords of x in those rows
    auto tinv = inverse(to_std);
    if (!tinv) throw Error("hyperbolic basis is singular");
    e = transform_target(e, target, *tinv);
    Matrix<Fp> t2 = random_isometry(target.space, rng);
    e = transform_target(e, target, t2);
    e.validate();
    return e;
}

/// Random four-stage combination pipeline for an isotropic source.
inline CombinationDatum<Fp> random_combination(GrassKind kind, std::size_t k, std::size_t dimv,
                                               Int p, std::mt19937_64& rng) {
    if (kind == GrassKind::plain) throw InvalidDescriptor("combination sources are isotropic");
    GrassDesc<Fp> source = standard_desc<Fp>(kind, k, dimv, p);

    std::uniform_int_distribution<std::size_t> grow(0, 1);
    std::size_t l = k + grow(rng);
    std::size_t mid_m = dimv + (l - k) + grow(rng);
    StdExtDatum<Fp> plain_step = random_std_ext(GrassKind::plain, k, dimv, l, mid_m, p, rng);

    bool dual = grow(rng) == 1;
    std::size_t l_t = dual ? mid_m - l : l;
    std::size_t big = 2 * mid_m + 4;
    GrassDesc<Fp> mid_target = standard_desc<Fp>(kind, l_t, big, p);
    Subspace<Fp> v_iso = random_isotropic(mid_target.space, mid_m, rng);
    IsoExtDatum<Fp> iso_step{dual ? IsoExtDatum<Fp>::Direction::dual
                                  : IsoExtDatum<Fp>::Direction::straight,
                             plain_desc<Fp>(l, mid_m, p), mid_target, v_iso};
    iso_step.validate();

    std::size_t kp = l_t + grow(rng);
    std::size_t bigp = big + 2 * (kp - l_t) + 2 * grow(rng);
    StdExtDatum<Fp> final_step = random_std_ext(kind, l_t, big, kp, bigp, p, rng);

    CombinationDatum<Fp> combo{source, plain_step, iso_step, final_step};
    combo.validate();
    return combo;
}

// ---------------------------------------------------------------------------
// Constructed factor-through maps for the classifier suite

/// Plain projective source embedded into one alpha member of the target.
inline PointMap projective_factor_map(GrassKind target_kind, std::size_t src_dim,
                                      std::size_t kp, std::size_t dimvp, Int p,
                                      std::mt19937_64& rng) {
    GrassDesc<Fp> source = plain_desc<Fp>(1, src_dim, p);
    GrassDesc<Fp> target = standard_desc<Fp>(target_kind, kp, dimvp, p);
    Subspace<Fp> v_top = random_isotropic(target.space, kp + 1, rng);
    if (src_dim > kp + 1) throw InvalidDescriptor("projective source too large for the member");
    Matrix<Fp> j;
    do {
        j = random_matrix_fp(src_dim, kp + 1, p, rng);
    } while (rank(j) != src_dim);

    PointMap m;
    m.source = source;
    m.target = target;
    for (const auto& pt : enumerate_points(source)) {
        // the hyperplane of v_top dual to the functional j(v)
        Matrix<Fp> functional = pt.basis() * j;  // 1 x (kp+1)
        Subspace<Fp> ker_in_top = kernel(functional.transpose());
        Subspace<Fp> img = Subspace<Fp>::from_rows(ker_in_top.basis() * v_top.basis());
        m.pairs.emplace_back(pt, img);
    }
    m.sort_pairs();
    return m;
}

/// Quadric source carried onto one QO_beta member of the target. With
/// `twist` (even source dimension, p odd) the carrying map is conformal with
/// a non-square factor, so the result is not a standard extension.
inline PointMap quadric_factor_map(std::size_t src_dim, std::size_t kp, std::size_t dimvp, Int p,
                                   std::mt19937_64& rng, bool twist = false) {
    GrassDesc<Fp> source = standard_desc<Fp>(GrassKind::ortho, 1, src_dim, p);
    GrassDesc<Fp> target = standard_desc<Fp>(GrassKind::ortho, kp, dimvp, p);
    if (dimvp - 2 * (kp - 1) != src_dim)
        throw InvalidDescriptor("quadric member dimensions do not match the source");
    if (twist && src_dim % 2 != 0)
        throw InvalidDescriptor("conformal twists need an even source dimension");
    Subspace<Fp> s = random_isotropic(target.space, kp - 1, rng);
    QuotientForm<Fp> qf = induced_quotient_form(target.space, s);
    // rows of a hyperbolic basis carry the standard space isometrically into
    // the quotient coordinates; rescaling the quotient Gram first makes the
    // carrier conformal instead
    FormedSpace<Fp> scaled = qf.space;
    if (twist) {
        Fp c = grex::detail::non_square(p);
        scaled.form->gram = qf.space.gram().scaled(c.inverse());
    }
    Matrix<Fp> iso = hyperbolic_basis(scaled);
    Matrix<Fp> pre = random_isometry(source.space, rng);

    PointMap m;
    m.source = source;
    m.target = target;
    for (const auto& pt : enumerate_points(source)) {
        Subspace<Fp> in_quot = Subspace<Fp>::from_rows(pt.basis() * pre * iso);
        m.pairs.emplace_back(pt, qf.quotient.lift(in_quot));
    }
    m.sort_pairs();
    return m;
}

/// Plain Grassmannian embedded inside the sub-Grassmannian of one maximal
/// isotropic subspace of an even orthogonal target.
inline PointMap subgrassmannian_factor_map(std::size_t k, std::size_t dimv, std::size_t dimvp,
                                           Int p, std::mt19937_64& rng) {
    if (dimvp % 2 != 0) throw InvalidDescriptor("sub-Grassmannian factors need even targets");
    std::size_t np = dimvp / 2;
    GrassDesc<Fp> source = plain_desc<Fp>(k, dimv, p);
    GrassDesc<Fp> target = standard_desc<Fp>(GrassKind::ortho, np - 2, dimvp, p);
    Subspace<Fp> v_max = random_isotropic(target.space, np, rng);
    StdExtDatum<Fp> inner = random_std_ext(GrassKind::plain, k, dimv, np - 2, np, p, rng);

    PointMap m;
    m.source = source;
    m.target = target;
    for (const auto& pt : enumerate_points(source)) {
        Subspace<Fp> mid = apply(inner, pt);
        m.pairs.emplace_back(pt, Subspace<Fp>::from_rows(mid.basis() * v_max.basis()));
    }
    m.sort_pairs();
    return m;
}

}  // namespace grex
