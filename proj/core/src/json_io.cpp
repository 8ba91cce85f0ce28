#include "grex/json_io.hpp"

namespace grex {

namespace {

const Json& need(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object() || !j.contains(key))
        throw SchemaError(std::string("missing key '") + key + "'", path + "." + key);
    return j.at(key);
}

Int need_int(const Json& j, const char* key, const std::string& path) {
    const Json& v = need(j, key, path);
    if (!v.is_number_integer()) throw SchemaError("expected an integer", path + "." + key);
    return v.get<Int>();
}

std::string need_str(const Json& j, const char* key, const std::string& path) {
    const Json& v = need(j, key, path);
    if (!v.is_string()) throw SchemaError("expected a string", path + "." + key);
    return v.get<std::string>();
}

GrassKind kind_from_string(const std::string& s, const std::string& path) {
    if (s == "plain") return GrassKind::plain;
    if (s == "ortho") return GrassKind::ortho;
    if (s == "symp") return GrassKind::symp;
    throw SchemaError("unknown kind '" + s + "'", path);
}

}  // namespace

Fp fp_from_json(const Json& j, Int p, const std::string& path) {
    if (!j.is_number_integer()) throw SchemaError("expected a GF(p) scalar as integer", path);
    Int v = j.get<Int>();
    if (v < 0 || v >= p) throw SchemaError("GF(p) scalar out of range [0,p)", path);
    return Fp(v, p);
}

Rat rat_from_json(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return Rat(j.get<Int>(), 1);
    if (!j.is_string()) throw SchemaError("expected a rational as 'a/b' string", path);
    const std::string s = j.get<std::string>();
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(BigRat(BigInt(s)));
        BigInt num(s.substr(0, slash)), den(s.substr(slash + 1));
        if (den <= 0) throw SchemaError("rational denominator must be positive", path);
        return Rat(BigRat(num, den));
    } catch (const SchemaError&) {
        throw;
    } catch (const std::exception&) {
        throw SchemaError("malformed rational '" + s + "'", path);
    }
}

Json to_json(const FieldSpec& f) {
    if (f.rational()) return Json("Q");
    Json j = Json::object();
    j["p"] = f.p;
    return j;
}

FieldSpec field_from_json(const Json& j, const std::string& path) {
    if (j.is_string()) {
        if (j.get<std::string>() == "Q") return FieldSpec::rationals();
        throw SchemaError("field must be {\"p\": prime} or \"Q\"", path);
    }
    if (j.is_object() && j.contains("p")) {
        Int p = need_int(j, "p", path);
        if (!is_prime(p)) throw SchemaError("field modulus must be prime", path + ".p");
        return FieldSpec::gf(p);
    }
    throw SchemaError("field must be {\"p\": prime} or \"Q\"", path);
}

Matrix<Fp> matrix_fp_from_json(const Json& j, Int p, const std::string& path) {
    if (!j.is_array()) throw SchemaError("expected a matrix as array of arrays", path);
    std::size_t rows = j.size();
    std::size_t cols = rows == 0 ? 0 : j.at(0).size();
    Matrix<Fp> m(rows, cols, p);
    for (std::size_t r = 0; r < rows; ++r) {
        const Json& row = j.at(r);
        if (!row.is_array() || row.size() != cols)
            throw SchemaError("ragged matrix", path + "[" + std::to_string(r) + "]");
        for (std::size_t c = 0; c < cols; ++c)
            m.at(r, c) = fp_from_json(row.at(c), p,
                                      path + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
    return m;
}

Matrix<Rat> matrix_rat_from_json(const Json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError("expected a matrix as array of arrays", path);
    std::size_t rows = j.size();
    std::size_t cols = rows == 0 ? 0 : j.at(0).size();
    Matrix<Rat> m(rows, cols, Rat::Ctx{});
    for (std::size_t r = 0; r < rows; ++r) {
        const Json& row = j.at(r);
        if (!row.is_array() || row.size() != cols)
            throw SchemaError("ragged matrix", path + "[" + std::to_string(r) + "]");
        for (std::size_t c = 0; c < cols; ++c)
            m.at(r, c) = rat_from_json(row.at(c),
                                       path + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
    return m;
}

Subspace<Fp> subspace_from_json(const Json& j, Int p, std::size_t ambient, const std::string& path) {
    Matrix<Fp> m = matrix_fp_from_json(j, p, path);
    if (m.rows() == 0) return Subspace<Fp>::zero(ambient, p);
    if (m.cols() != ambient) throw SchemaError("subspace ambient mismatch", path);
    return Subspace<Fp>::from_rows(std::move(m));
}

Json to_json(const GrassDesc<Fp>& d) {
    Json j = Json::object();
    j["kind"] = grass_kind_name(d.kind);
    j["k"] = d.k;
    j["dim"] = d.dim_v();
    j["field"] = to_json(FieldSpec::gf(d.ctx()));
    if (d.kind != GrassKind::plain) {
        if (d.space.gram() == standard_gram<Fp>(d.space.kind(), d.dim_v(), d.ctx())) {
            j["form"] = "standard";
        } else {
            j["form"] = to_json(d.space.gram());
        }
    }
    return j;
}

Json to_json(const GrassDesc<Rat>& d) {
    Json j = Json::object();
    j["kind"] = grass_kind_name(d.kind);
    j["k"] = d.k;
    j["dim"] = d.dim_v();
    j["field"] = to_json(FieldSpec::rationals());
    if (d.kind != GrassKind::plain) j["form"] = "standard";
    return j;
}

FieldSpec desc_field(const Json& j, const std::string& path) {
    return field_from_json(need(j, "field", path), path + ".field");
}

GrassDesc<Fp> desc_fp_from_json(const Json& j, const std::string& path) {
    GrassKind kind = kind_from_string(need_str(j, "kind", path), path + ".kind");
    Int k = need_int(j, "k", path);
    Int dim = need_int(j, "dim", path);
    if (k < 0 || dim < 0) throw SchemaError("negative descriptor parameters", path);
    FieldSpec f = desc_field(j, path);
    if (!f.finite()) throw SchemaError("this operation needs a finite field", path + ".field");
    if (kind == GrassKind::plain)
        return plain_desc<Fp>(static_cast<std::size_t>(k), static_cast<std::size_t>(dim), f.p);
    if (j.contains("form") && !need(j, "form", path).is_string()) {
        Matrix<Fp> gram = matrix_fp_from_json(j.at("form"), f.p, path + ".form");
        FormKind fk = kind == GrassKind::ortho ? FormKind::symmetric : FormKind::symplectic;
        GrassDesc<Fp> d{kind, static_cast<std::size_t>(k),
                        FormedSpace<Fp>{static_cast<std::size_t>(dim), f.p, BilinearForm<Fp>{fk, gram}}};
        d.validate();
        return d;
    }
    return standard_desc<Fp>(kind, static_cast<std::size_t>(k), static_cast<std::size_t>(dim), f.p);
}

Json to_json(const GrassDesc<Fp>& d, const FamilyMember& m, bool with_points) {
    Json j = Json::object();
    j["tag"] = family_tag_name(m.tag);
    if (std::holds_alternative<Subspace<Fp>>(m.datum)) {
        j["datum"] = to_json(std::get<Subspace<Fp>>(m.datum));
    } else {
        const auto& f = std::get<FlagPair<Fp>>(m.datum);
        Json flag = Json::object();
        flag["inner"] = to_json(f.inner);
        flag["outer"] = to_json(f.outer);
        j["datum"] = std::move(flag);
    }
    if (with_points) {
        Json pts = Json::array();
        for (const auto& p : m.points) pts.push_back(to_json(p));
        j["points"] = std::move(pts);
    }
    (void)d;
    return j;
}

FamilyTag family_tag_from_string(const std::string& s, const std::string& path) {
    for (auto t : {FamilyTag::po_alpha, FamilyTag::po_beta, FamilyTag::qo_beta, FamilyTag::qo_gamma,
                   FamilyTag::ps_alpha, FamilyTag::ps_beta}) {
        if (s == family_tag_name(t)) return t;
    }
    throw SchemaError("unknown family tag '" + s + "'", path);
}

std::pair<FamilyTag, FamilyDatum> family_datum_from_json(const GrassDesc<Fp>& d, const Json& j,
                                                         const std::string& path) {
    FamilyTag tag = family_tag_from_string(need_str(j, "tag", path), path + ".tag");
    const Json& datum = need(j, "datum", path);
    if (datum.is_object()) {
        Subspace<Fp> inner =
            subspace_from_json(need(datum, "inner", path + ".datum"), d.ctx(), d.dim_v(), path + ".datum.inner");
        Subspace<Fp> outer =
            subspace_from_json(need(datum, "outer", path + ".datum"), d.ctx(), d.dim_v(), path + ".datum.outer");
        return {tag, FamilyDatum(FlagPair<Fp>(inner, outer))};
    }
    return {tag, FamilyDatum(subspace_from_json(datum, d.ctx(), d.dim_v(), path + ".datum"))};
}

Json to_json(const StdExtDatum<Fp>& e) {
    Json j = Json::object();
    j["kind"] = "standard";
    j["source"] = to_json(e.source);
    j["target"] = to_json(e.target);
    j["W"] = to_json(e.w);
    j["U"] = to_json(e.u);
    j["phi_bar"] = to_json(e.phi_bar);
    return j;
}

Json to_json(const IsoExtDatum<Fp>& e) {
    Json j = Json::object();
    j["kind"] = "isotropic";
    j["direction"] = e.direction == IsoExtDatum<Fp>::Direction::straight ? "straight" : "dual";
    j["source"] = to_json(e.source);
    j["target"] = to_json(e.target);
    j["v_iso"] = to_json(e.v_iso);
    return j;
}

Json to_json(const CombinationDatum<Fp>& e) {
    Json j = Json::object();
    j["kind"] = "combination";
    j["source"] = to_json(e.source);
    j["target"] = to_json(e.target());
    Json pipe = Json::array();
    pipe.push_back(to_json(e.plain_step));
    pipe.push_back(to_json(e.iso_step));
    pipe.push_back(to_json(e.final_step));
    j["pipeline"] = std::move(pipe);
    return j;
}

Json to_json(const Extension<Fp>& e) {
    return std::visit([](const auto& x) { return to_json(x); }, e.data);
}

namespace {

StdExtDatum<Fp> std_ext_from_json(const Json& j, const std::string& path) {
    GrassDesc<Fp> source = desc_fp_from_json(need(j, "source", path), path + ".source");
    GrassDesc<Fp> target = desc_fp_from_json(need(j, "target", path), path + ".target");
    Int p = source.ctx();
    Subspace<Fp> w = subspace_from_json(need(j, "W", path), p, target.dim_v(), path + ".W");
    Subspace<Fp> u = subspace_from_json(need(j, "U", path), p, target.dim_v(), path + ".U");
    Matrix<Fp> phi = matrix_fp_from_json(need(j, "phi_bar", path), p, path + ".phi_bar");
    StdExtDatum<Fp> e{source, target, w, u, phi};
    try {
        e.validate();
    } catch (const Error& err) {
        throw SchemaError(std::string("invalid standard extension: ") + err.what(), path);
    }
    return e;
}

IsoExtDatum<Fp> iso_ext_from_json(const Json& j, const std::string& path) {
    std::string dir = need_str(j, "direction", path);
    if (dir != "straight" && dir != "dual")
        throw SchemaError("direction must be 'straight' or 'dual'", path + ".direction");
    GrassDesc<Fp> source = desc_fp_from_json(need(j, "source", path), path + ".source");
    GrassDesc<Fp> target = desc_fp_from_json(need(j, "target", path), path + ".target");
    Subspace<Fp> v = subspace_from_json(need(j, "v_iso", path), source.ctx(), target.dim_v(),
                                        path + ".v_iso");
    IsoExtDatum<Fp> e{dir == "straight" ? IsoExtDatum<Fp>::Direction::straight
                                        : IsoExtDatum<Fp>::Direction::dual,
                      source, target, v};
    try {
        e.validate();
    } catch (const Error& err) {
        throw SchemaError(std::string("invalid isotropic extension: ") + err.what(), path);
    }
    return e;
}

}  // namespace

Extension<Fp> extension_from_json(const Json& j, const std::string& path) {
    std::string kind = need_str(j, "kind", path);
    if (kind == "standard") return Extension<Fp>(std_ext_from_json(j, path));
    if (kind == "isotropic") return Extension<Fp>(iso_ext_from_json(j, path));
    if (kind == "combination") {
        GrassDesc<Fp> source = desc_fp_from_json(need(j, "source", path), path + ".source");
        const Json& pipe = need(j, "pipeline", path);
        if (!pipe.is_array() || pipe.size() != 3)
            throw SchemaError("pipeline must hold [plain standard, isotropic, standard]",
                              path + ".pipeline");
        CombinationDatum<Fp> c{source, std_ext_from_json(pipe.at(0), path + ".pipeline[0]"),
                               iso_ext_from_json(pipe.at(1), path + ".pipeline[1]"),
                               std_ext_from_json(pipe.at(2), path + ".pipeline[2]")};
        try {
            c.validate();
        } catch (const Error& err) {
            throw SchemaError(std::string("invalid combination: ") + err.what(), path);
        }
        return Extension<Fp>(c);
    }
    throw SchemaError("extension kind must be standard/isotropic/combination", path + ".kind");
}

Json to_json(const PointMap& m) {
    Json j = Json::object();
    j["source"] = to_json(m.source);
    j["target"] = to_json(m.target);
    Json pairs = Json::array();
    for (const auto& [s, t] : m.pairs) {
        Json pr = Json::array();
        pr.push_back(to_json(s));
        pr.push_back(to_json(t));
        pairs.push_back(std::move(pr));
    }
    j["pairs"] = std::move(pairs);
    return j;
}

PointMap point_map_from_json(const Json& j, const std::string& path) {
    PointMap m;
    m.source = desc_fp_from_json(need(j, "source", path), path + ".source");
    m.target = desc_fp_from_json(need(j, "target", path), path + ".target");
    Int p = m.source.ctx();
    if (j.contains("closed_form")) {
        std::string cf = need_str(j, "closed_form", path);
        bool take_perp = cf == "split_perp";
        if (!take_perp && cf != "split")
            throw SchemaError("closed_form must be 'split' or 'split_perp'", path + ".closed_form");
        Subspace<Fp> w = subspace_from_json(need(j, "W", path), p, m.target.dim_v(), path + ".W");
        Matrix<Fp> inj = matrix_fp_from_json(need(j, "decomposition", path), p, path + ".decomposition");
        return closed_form_point_map(m.source, m.target, take_perp, w, inj);
    }
    const Json& pairs = need(j, "pairs", path);
    if (!pairs.is_array()) throw SchemaError("pairs must be an array", path + ".pairs");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const Json& pr = pairs.at(i);
        std::string at = path + ".pairs[" + std::to_string(i) + "]";
        if (!pr.is_array() || pr.size() != 2) throw SchemaError("pair must be [src, dst]", at);
        m.pairs.emplace_back(subspace_from_json(pr.at(0), p, m.source.dim_v(), at + "[0]"),
                             subspace_from_json(pr.at(1), p, m.target.dim_v(), at + "[1]"));
    }
    m.sort_pairs();
    return m;
}

namespace {

Json to_json(const AffineRule& r) {
    Json j = Json::object();
    j["m0"] = r.m0;
    j["prefix"] = r.prefix;
    j["slope"] = r.slope;
    j["intercept"] = r.intercept;
    return j;
}

AffineRule affine_from_json(const Json& j, const std::string& path) {
    AffineRule r;
    r.m0 = static_cast<std::size_t>(need_int(j, "m0", path));
    const Json& pre = need(j, "prefix", path);
    if (!pre.is_array()) throw SchemaError("prefix must be an array", path + ".prefix");
    for (const auto& v : pre) r.prefix.push_back(v.get<Int>());
    r.slope = need_int(j, "slope", path);
    r.intercept = need_int(j, "intercept", path);
    try {
        r.validate();
    } catch (const Error& err) {
        throw SchemaError(err.what(), path);
    }
    return r;
}

StepClass step_from_string(const std::string& s, const std::string& path) {
    for (auto c : {StepClass::standard, StepClass::combination, StepClass::factors_projective,
                   StepClass::factors_quadric}) {
        if (s == step_class_name(c)) return c;
    }
    throw SchemaError("unknown step class '" + s + "'", path);
}

}  // namespace

Json to_json(const ChainSpec& c) {
    Json j = Json::object();
    j["kind"] = grass_kind_name(c.term.kind);
    j["k"] = to_json(c.term.k_rule);
    j["n"] = to_json(c.term.n_rule);
    if (c.term.parity) j["parity"] = parity_name(*c.term.parity);
    Json steps = Json::object();
    steps["eventual"] = step_class_name(c.steps.eventual);
    Json spre = Json::array();
    for (auto s : c.steps.prefix) spre.push_back(step_class_name(s));
    steps["prefix"] = std::move(spre);
    j["steps"] = std::move(steps);
    if (!c.kind_prefix.empty()) {
        Json kp = Json::array();
        for (auto k : c.kind_prefix) kp.push_back(grass_kind_name(k));
        j["kind_prefix"] = std::move(kp);
    }
    return j;
}

ChainSpec chain_from_json(const Json& j, const std::string& path) {
    ChainSpec c;
    c.term.kind = kind_from_string(need_str(j, "kind", path), path + ".kind");
    c.term.k_rule = affine_from_json(need(j, "k", path), path + ".k");
    c.term.n_rule = affine_from_json(need(j, "n", path), path + ".n");
    if (j.contains("parity")) {
        std::string s = need_str(j, "parity", path);
        if (s == "even") c.term.parity = Parity::even;
        else if (s == "odd") c.term.parity = Parity::odd;
        else throw SchemaError("parity must be 'even' or 'odd'", path + ".parity");
    }
    if (j.contains("steps")) {
        const Json& st = j.at("steps");
        c.steps.eventual = step_from_string(need_str(st, "eventual", path + ".steps"),
                                            path + ".steps.eventual");
        if (st.contains("prefix")) {
            for (std::size_t i = 0; i < st.at("prefix").size(); ++i)
                c.steps.prefix.push_back(step_from_string(st.at("prefix").at(i).get<std::string>(),
                                                          path + ".steps.prefix"));
        }
    }
    if (j.contains("kind_prefix")) {
        for (std::size_t i = 0; i < j.at("kind_prefix").size(); ++i)
            c.kind_prefix.push_back(kind_from_string(j.at("kind_prefix").at(i).get<std::string>(),
                                                     path + ".kind_prefix"));
    }
    try {
        c.validate();
    } catch (const SchemaError&) {
        throw;
    } catch (const Error& err) {
        throw SchemaError(err.what(), path);
    }
    return c;
}

Json to_json(const Classification& c) {
    Json j = Json::object();
    j["class"] = embedding_class_name(c.cls);
    if (c.extension) j["extension"] = to_json(*c.extension);
    if (c.witness) {
        if (std::holds_alternative<Subspace<Fp>>(*c.witness)) {
            j["witness"] = to_json(std::get<Subspace<Fp>>(*c.witness));
        } else {
            const auto& f = std::get<FlagPair<Fp>>(*c.witness);
            Json flag = Json::object();
            flag["inner"] = to_json(f.inner);
            flag["outer"] = to_json(f.outer);
            j["witness"] = std::move(flag);
        }
    }
    if (c.witness_tag) j["witness_tag"] = family_tag_name(*c.witness_tag);
    j["warnings"] = c.warnings;
    return j;
}

}  // namespace grex
