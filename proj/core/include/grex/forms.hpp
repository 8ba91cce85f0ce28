#pragma once

// Symmetric and symplectic bilinear forms on exact vector spaces:
// perpendicularity, isotropy, induced quotient forms, orthogonal direct sums,
// and reduction of split forms to the standard hyperbolic Gram.

#include <optional>
#include <random>
#include <vector>

#include "grex/subspace.hpp"

namespace grex {

enum class FormKind { symmetric, symplectic };

inline const char* form_kind_name(FormKind k) {
    return k == FormKind::symmetric ? "symmetric" : "symplectic";
}

/// Standard split Gram: antidiagonal ones for symmetric (central 1 for odd
/// dimension); antidiagonal +1 upper half / -1 lower half for symplectic.
template <class K>
Matrix<K> standard_gram(FormKind kind, std::size_t dim, typename K::Ctx ctx) {
    Matrix<K> g(dim, dim, ctx);
    if (kind == FormKind::symmetric) {
        for (std::size_t i = 0; i < dim; ++i) g.at(i, dim - 1 - i) = K::one(ctx);
    } else {
        if (dim % 2 != 0) throw InvalidDescriptor("symplectic dimension must be even");
        for (std::size_t i = 0; i < dim / 2; ++i) {
            g.at(i, dim - 1 - i) = K::one(ctx);
            g.at(dim - 1 - i, i) = -K::one(ctx);
        }
    }
    return g;
}

template <class K>
struct BilinearForm {
    FormKind kind;
    Matrix<K> gram;

    void validate() const {
        if (gram.rows() != gram.cols()) throw InvalidDescriptor("Gram matrix must be square");
        std::size_t n = gram.rows();
        if (kind == FormKind::symmetric) {
            if (gram.transpose() != gram) throw InvalidDescriptor("symmetric form needs symmetric Gram");
        } else {
            if (n % 2 != 0) throw InvalidDescriptor("symplectic form needs even dimension");
            for (std::size_t i = 0; i < n; ++i)
                if (!gram.at(i, i).is_zero())
                    throw InvalidDescriptor("symplectic Gram must have zero diagonal");
            Matrix<K> neg = gram.scaled(-K::one(gram.ctx()));
            if (gram.transpose() != neg) throw InvalidDescriptor("symplectic Gram must be antisymmetric");
        }
    }

    bool nondegenerate() const { return rank(gram) == gram.rows(); }

    bool operator==(const BilinearForm&) const = default;
};

/// A coordinate space with an optional form on it.
template <class K>
struct FormedSpace {
    std::size_t dim = 0;
    typename K::Ctx ctx{};
    std::optional<BilinearForm<K>> form;

    static FormedSpace plain(std::size_t dim, typename K::Ctx ctx) { return FormedSpace{dim, ctx, std::nullopt}; }

    bool has_form() const { return form.has_value(); }
    FormKind kind() const {
        if (!form) throw InvalidDescriptor("space carries no form");
        return form->kind;
    }
    const Matrix<K>& gram() const {
        if (!form) throw InvalidDescriptor("space carries no form");
        return form->gram;
    }

    void validate() const {
        if (!form) return;
        form->validate();
        if (form->gram.rows() != dim) throw InvalidDescriptor("Gram size does not match space dimension");
        if (form->kind == FormKind::symmetric && K::characteristic(ctx) == 2)
            throw InvalidDescriptor("symmetric forms are not supported in characteristic 2");
        if (!form->nondegenerate()) throw InvalidDescriptor("form is degenerate");
    }

    bool operator==(const FormedSpace&) const = default;
};

/// Nondegenerate split form of the given kind; isotropic subspaces of every
/// dimension up to floor(dim/2) exist over any coefficient field.
template <class K>
FormedSpace<K> standard_hyperbolic(FormKind kind, std::size_t dim, typename K::Ctx ctx) {
    if (kind == FormKind::symplectic && dim % 2 != 0)
        throw InvalidDescriptor("symplectic dimension must be even");
    if (kind == FormKind::symmetric && K::characteristic(ctx) == 2)
        throw InvalidDescriptor("symmetric forms need characteristic != 2");
    FormedSpace<K> v{dim, ctx, BilinearForm<K>{kind, standard_gram<K>(kind, dim, ctx)}};
    v.validate();
    return v;
}

template <class K>
K form_eval(const FormedSpace<K>& sp, const std::vector<K>& u, const std::vector<K>& v) {
    const Matrix<K>& g = sp.gram();
    K acc = K::zero(sp.ctx);
    for (std::size_t i = 0; i < sp.dim; ++i) {
        if (u[i].is_zero()) continue;
        K inner = K::zero(sp.ctx);
        for (std::size_t j = 0; j < sp.dim; ++j) inner += g.at(i, j) * v[j];
        acc += u[i] * inner;
    }
    return acc;
}

template <class K>
Subspace<K> perp(const FormedSpace<K>& sp, const Subspace<K>& s) {
    if (!sp.has_form() || !sp.form->nondegenerate())
        throw InvalidDescriptor("perp needs a nondegenerate form");
    if (s.ambient_dim() != sp.dim) throw DimensionMismatch("perp ambient mismatch");
    if (s.dim() == 0) return Subspace<K>::full(sp.dim, sp.ctx);
    return kernel((s.basis() * sp.gram()).transpose());
}

template <class K>
bool is_isotropic(const FormedSpace<K>& sp, const Subspace<K>& s) {
    if (s.ambient_dim() != sp.dim) throw DimensionMismatch("isotropy ambient mismatch");
    Matrix<K> m = s.basis() * sp.gram() * s.basis().transpose();
    return m.is_zero();
}

template <class K>
struct QuotientForm {
    QuotientSpace<K> quotient;  // perp(w) / w
    FormedSpace<K> space;       // the induced form in complement coordinates

    QuotientForm(QuotientSpace<K> q, FormedSpace<K> s) : quotient(std::move(q)), space(std::move(s)) {}
};

/// Form induced on perp(w)/w for isotropic w; well defined and nondegenerate.
template <class K>
QuotientForm<K> induced_quotient_form(const FormedSpace<K>& sp, const Subspace<K>& w) {
    if (!is_isotropic(sp, w)) throw InvalidDescriptor("quotient form needs an isotropic subspace");
    QuotientSpace<K> q(perp(sp, w), w);
    Matrix<K> c = q.comp();
    Matrix<K> gram = c * sp.gram() * c.transpose();
    FormedSpace<K> out{q.dim(), sp.ctx, BilinearForm<K>{sp.kind(), gram}};
    out.validate();
    return QuotientForm<K>(std::move(q), std::move(out));
}

template <class K>
struct SplitDecomposition {
    FormedSpace<K> total;
    FormedSpace<K> part;
    FormedSpace<K> complement;
    Matrix<K> inj_part;        // dim(part) x dim(total)
    Matrix<K> inj_complement;  // dim(complement) x dim(total)
};

/// Orthogonal direct sum with block-diagonal Gram; injections are the
/// coordinate inclusions.
template <class K>
SplitDecomposition<K> split_sum(const FormedSpace<K>& v, const FormedSpace<K>& w_hat) {
    if (!v.has_form() || !w_hat.has_form()) throw InvalidDescriptor("split_sum needs formed spaces");
    if (v.kind() != w_hat.kind()) throw InvalidDescriptor("split_sum kind mismatch");
    std::size_t n = v.dim + w_hat.dim;
    Matrix<K> gram(n, n, v.ctx);
    for (std::size_t i = 0; i < v.dim; ++i)
        for (std::size_t j = 0; j < v.dim; ++j) gram.at(i, j) = v.gram().at(i, j);
    for (std::size_t i = 0; i < w_hat.dim; ++i)
        for (std::size_t j = 0; j < w_hat.dim; ++j) gram.at(v.dim + i, v.dim + j) = w_hat.gram().at(i, j);
    FormedSpace<K> total{n, v.ctx, BilinearForm<K>{v.kind(), gram}};
    total.validate();
    Matrix<K> inj_v(v.dim, n, v.ctx);
    for (std::size_t i = 0; i < v.dim; ++i) inj_v.at(i, i) = K::one(v.ctx);
    Matrix<K> inj_w(w_hat.dim, n, v.ctx);
    for (std::size_t i = 0; i < w_hat.dim; ++i) inj_w.at(i, v.dim + i) = K::one(v.ctx);
    return SplitDecomposition<K>{total, v, w_hat, inj_v, inj_w};
}

// ---------------------------------------------------------------------------
// Split-form basis extraction over GF(p). Produces S with S G S^T equal to the
// standard Gram; fails when the form is not congruent to it. With an RNG the
// choices randomize, which is how random isometries are built.

namespace detail {

inline std::vector<Fp> random_vector_in(const Subspace<Fp>& s, std::mt19937_64& rng) {
    Int p = s.ctx();
    std::uniform_int_distribution<Int> d(0, p - 1);
    while (true) {
        std::vector<Fp> coef(s.dim(), Fp::zero(p));
        bool nz = false;
        for (auto& c : coef) {
            c = Fp(d(rng), p);
            nz = nz || !c.is_zero();
        }
        if (!nz) continue;
        std::vector<Fp> v(s.ambient_dim(), Fp::zero(p));
        for (std::size_t i = 0; i < s.dim(); ++i)
            for (std::size_t j = 0; j < s.ambient_dim(); ++j) v[j] += coef[i] * s.basis().at(i, j);
        return v;
    }
}

inline std::optional<Fp> sqrt_mod(Fp c) {
    for (Int t = 0; t < c.modulus(); ++t) {
        Fp x(t, c.modulus());
        if (x * x == c) return x;
    }
    return std::nullopt;
}

inline Fp non_square(Int p) {
    for (Int t = 2; t < p; ++t) {
        Fp c(t, p);
        if (!sqrt_mod(c)) return c;
    }
    throw Error("no non-square unit; the field is too small");
}

/// Nonzero isotropic vector in s (restricted form), deterministic scan.
inline std::optional<std::vector<Fp>> isotropic_vector_in(const FormedSpace<Fp>& sp,
                                                          const Subspace<Fp>& s,
                                                          std::mt19937_64* rng) {
    if (s.dim() == 0) return std::nullopt;
    Int p = sp.ctx;
    if (rng) {
        for (int tries = 0; tries < 64; ++tries) {
            auto v = random_vector_in(s, *rng);
            if (form_eval(sp, v, v).is_zero()) return v;
        }
    }
    for (std::size_t i = 0; i < s.dim(); ++i) {
        auto b = s.basis().row(i);
        if (form_eval(sp, b, b).is_zero()) return b;
    }
    // search the planes spanned by basis pairs: Q(a + t b) is quadratic in t
    for (std::size_t i = 0; i < s.dim(); ++i) {
        for (std::size_t j = i + 1; j < s.dim(); ++j) {
            auto a = s.basis().row(i);
            auto b = s.basis().row(j);
            for (Int t = 0; t < p; ++t) {
                std::vector<Fp> v = a;
                for (std::size_t c = 0; c < v.size(); ++c) v[c] += Fp(t, p) * b[c];
                if (form_eval(sp, v, v).is_zero()) return v;
            }
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Basis rows S of GF(p)^dim with S * G * S^T the standard Gram of the same
/// kind and dimension. Throws when the form is not split of standard type.
inline Matrix<Fp> hyperbolic_basis(const FormedSpace<Fp>& sp, std::mt19937_64* rng = nullptr) {
    sp.validate();
    if (!sp.has_form()) throw InvalidDescriptor("hyperbolic_basis needs a form");
    Int p = sp.ctx;
    std::size_t pairs = sp.dim / 2;
    std::vector<std::vector<Fp>> xs, ys;
    Subspace<Fp> rest = Subspace<Fp>::full(sp.dim, p);
    Matrix<Fp> taken(0, sp.dim, p);

    for (std::size_t i = 0; i < pairs; ++i) {
        std::optional<std::vector<Fp>> v;
        if (sp.kind() == FormKind::symplectic) {
            v = rng ? std::optional(detail::random_vector_in(rest, *rng)) : std::optional(rest.basis().row(0));
        } else {
            v = detail::isotropic_vector_in(sp, rest, rng);
            if (!v) throw Error("form is not congruent to the standard split form");
        }
        // partner with nonzero pairing
        std::optional<std::vector<Fp>> u;
        for (std::size_t r = 0; r < rest.dim(); ++r) {
            auto cand = rest.basis().row(r);
            if (!form_eval(sp, *v, cand).is_zero()) {
                u = cand;
                break;
            }
        }
        if (!u) throw Error("degenerate restriction while splitting hyperbolic pairs");
        Fp scale = form_eval(sp, *v, *u).inverse();
        for (auto& e : *u) e *= scale;
        if (sp.kind() == FormKind::symmetric) {
            // make the partner isotropic: u' = u - (Phi(u,u)/2) v
            Fp half = Fp(2, p).inverse();
            Fp c = form_eval(sp, *u, *u) * half;
            for (std::size_t j = 0; j < u->size(); ++j) (*u)[j] -= c * (*v)[j];
        }
        xs.push_back(*v);
        ys.push_back(*u);
        Matrix<Fp> pairm(2, sp.dim, p);
        pairm.set_row(0, *v);
        pairm.set_row(1, *u);
        taken = Matrix<Fp>::vstack(taken, pairm);
        rest = perp(sp, Subspace<Fp>::from_rows(taken));
    }

    Matrix<Fp> out(sp.dim, sp.dim, p);
    for (std::size_t i = 0; i < pairs; ++i) {
        out.set_row(i, xs[i]);
        out.set_row(sp.dim - 1 - i, ys[i]);
    }
    if (sp.dim % 2 == 1) {
        if (rest.dim() != 1) throw Error("unexpected residual dimension in hyperbolic split");
        auto z = rest.basis().row(0);
        Fp c = form_eval(sp, z, z);
        auto root = detail::sqrt_mod(c);
        if (!root || root->is_zero()) throw Error("form is not congruent to the standard split form");
        Fp t = root->inverse();
        for (auto& e : z) e *= t;
        out.set_row(pairs, z);
    }
    Matrix<Fp> check = out * sp.gram() * out.transpose();
    if (check != standard_gram<Fp>(sp.kind(), sp.dim, p))
        throw Error("hyperbolic basis extraction failed to reach the standard Gram");
    return out;
}

/// Isometry of a formed space onto itself: T with T G T^T = G.
inline Matrix<Fp> random_isometry(const FormedSpace<Fp>& sp, std::mt19937_64& rng) {
    Matrix<Fp> a = hyperbolic_basis(sp, &rng);
    Matrix<Fp> b = hyperbolic_basis(sp, nullptr);
    auto binv = inverse(b);
    if (!binv) throw Error("hyperbolic basis is singular");
    return *binv * a;
}

/// Greedy isotropic extension of s inside sp up to target_dim, or nullopt.
inline std::optional<Subspace<Fp>> isotropic_complete(const FormedSpace<Fp>& sp, Subspace<Fp> s,
                                                      std::size_t target_dim,
                                                      std::mt19937_64* rng = nullptr) {
    if (!is_isotropic(sp, s)) return std::nullopt;
    while (s.dim() < target_dim) {
        QuotientForm<Fp> qf = induced_quotient_form(sp, s);
        auto v = detail::isotropic_vector_in(qf.space, Subspace<Fp>::full(qf.space.dim, sp.ctx), rng);
        if (!v) return std::nullopt;
        // lift to the big ambient
        std::vector<Fp> lifted(sp.dim, Fp::zero(sp.ctx));
        for (std::size_t i = 0; i < qf.quotient.comp().rows(); ++i)
            for (std::size_t j = 0; j < sp.dim; ++j) lifted[j] += (*v)[i] * qf.quotient.comp().at(i, j);
        Matrix<Fp> rowm(1, sp.dim, sp.ctx);
        rowm.set_row(0, lifted);
        s = Subspace<Fp>::from_rows(Matrix<Fp>::vstack(s.basis(), rowm));
    }
    return s;
}

}  // namespace grex
