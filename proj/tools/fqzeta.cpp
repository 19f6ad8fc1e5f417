// Batch front end for the fqzeta library.  Every subcommand reads flags (or a
// JSON config file; explicit flags win), runs one computation, and prints a
// deterministic JSON or CSV artifact on standard output.  --check turns the
// documented invariants of the underlying module into hard checks: the process
// exits nonzero when one fails.  --seed only affects randomized sampling in
// --check mode, never the computed mathematics.

#include <fqzeta/fqzeta.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace fqzeta;
using json = nlohmann::ordered_json;

namespace {

struct RunConfig {
    unsigned q = 2;
    unsigned p = 2;
    unsigned e = 1;
    std::string modulus;  // dense digits of the defining polynomial, only for e > 1
    int prec = 24;        // Laurent working window
    unsigned padic_n = 8;
    unsigned digits_m = 64;  // exponent digit budget
    unsigned n_max = 16;
    int d_max = -1;  // < 0: scan until stabilized
    std::uint64_t j = 0;
    std::uint64_t j_max = 0;
    std::vector<std::string> cond;
    std::string format;  // empty: per-subcommand default
    std::uint64_t seed = 1;
};

json config_to_json(const RunConfig& c) {
    json out;
    out["q"] = c.q;
    out["p"] = c.p;
    out["e"] = c.e;
    out["modulus"] = c.modulus;
    out["prec"] = c.prec;
    out["padic_N"] = c.padic_n;
    out["digits_M"] = c.digits_m;
    out["n_max"] = c.n_max;
    out["d_max"] = c.d_max;
    out["j"] = c.j;
    out["j_max"] = c.j_max;
    out["cond"] = c.cond;
    out["format"] = c.format;
    out["seed"] = c.seed;
    return out;
}

void config_from_json(const json& in, RunConfig& c) {
    c.q = in.value("q", c.q);
    c.p = in.value("p", c.p);
    c.e = in.value("e", c.e);
    c.modulus = in.value("modulus", c.modulus);
    c.prec = in.value("prec", c.prec);
    c.padic_n = in.value("padic_N", c.padic_n);
    c.digits_m = in.value("digits_M", c.digits_m);
    c.n_max = in.value("n_max", c.n_max);
    c.d_max = in.value("d_max", c.d_max);
    c.j = in.value("j", c.j);
    c.j_max = in.value("j_max", c.j_max);
    c.cond = in.value("cond", c.cond);
    c.format = in.value("format", c.format);
    c.seed = in.value("seed", c.seed);
}

void validate(RunConfig& c, bool q_set, bool p_set) {
    if (c.prec < 1 || c.padic_n < 1 || c.digits_m < 1)
        throw std::invalid_argument("precisions must be positive");
    if (!c.modulus.empty()) {
        std::size_t terms = 1;
        for (char ch : c.modulus)
            if (ch == ',') ++terms;
        if (terms < 3) throw std::invalid_argument("extension modulus needs degree >= 2");
        c.e = unsigned(terms - 1);
        std::uint64_t qq = 1;
        for (unsigned i = 0; i < c.e; ++i) qq *= c.p;
        c.q = unsigned(qq);
    } else {
        if (p_set && q_set && c.p != c.q)
            throw std::invalid_argument(
                "prime field: --q and --p disagree (give --modulus for extensions)");
        if (p_set && !q_set) c.q = c.p;
        c.p = c.q;
        c.e = 1;
    }
}

FqField make_field(const RunConfig& c) {
    if (c.modulus.empty()) return FqField(c.q);
    FqPoly m = FqPoly::parse_dense(FqField(c.p), c.modulus);
    std::vector<felem> digits;
    for (int i = 0; i <= m.degree(); ++i) digits.push_back(m.coeff(std::size_t(i)));
    return FqField(c.p, digits);
}

FqPoly parse_poly(const FqField& F, const std::string& s) {
    if (s.find('T') != std::string::npos) return FqPoly::parse_human(F, s);
    return FqPoly::parse_dense(F, s);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string tok;
    std::istringstream in(s);
    while (std::getline(in, tok, sep)) out.push_back(tok);
    return out;
}

// condition specs: "inf:LEVEL:d0,d1,..." (digits of the 1-unit residue from
// u^0 up) and "fin:BASE:EXP:RESIDUE" (polynomials in dense or human form)
CongruenceCondition parse_conds(const FqField& F, const std::vector<std::string>& specs) {
    CongruenceCondition cond;
    for (const std::string& s : specs) {
        std::vector<std::string> part = split(s, ':');
        if (part.size() == 3 && part[0] == "inf") {
            unsigned level = unsigned(std::stoul(part[1]));
            std::vector<felem> digits;
            for (const std::string& d : split(part[2], ','))
                digits.push_back(felem(std::stoul(d)));
            cond.set_infinite(level, LaurentSeries(F, 0, std::move(digits)));
        } else if (part.size() == 4 && part[0] == "fin") {
            cond.add_finite(parse_poly(F, part[1]), unsigned(std::stoul(part[2])),
                            parse_poly(F, part[3]));
        } else {
            throw std::invalid_argument("bad --cond spec '" + s +
                                        "' (want inf:LEVEL:DIGITS or fin:BASE:EXP:RESIDUE)");
        }
    }
    return cond;
}

std::map<FqPoly, FqPoly> load_table(const FqField& F, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open table file " + path);
    std::map<FqPoly, FqPoly> table;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::size_t semi = line.find(';');
        if (semi == std::string::npos)
            throw std::invalid_argument("table line without ';': " + line);
        table.insert_or_assign(parse_poly(F, line.substr(0, semi)),
                               parse_poly(F, line.substr(semi + 1)));
    }
    return table;
}

// family specs: zeta | carlitz | twist:K | table:FILE (needs explicit --dmax)
DirichletSeries make_series(const FqField& F, const std::string& spec) {
    if (spec == "zeta") return DirichletSeries::zeta(F);
    if (spec == "carlitz") return DirichletSeries::carlitz(F);
    if (spec.rfind("twist:", 0) == 0)
        return DirichletSeries::power_twist(F, unsigned(std::stoul(spec.substr(6))));
    if (spec.rfind("table:", 0) == 0) {
        std::string path = spec.substr(6);
        return DirichletSeries::from_table(F, load_table(F, path), 0, 0, "table");
    }
    throw std::invalid_argument("unknown series '" + spec +
                                "' (want zeta, carlitz, twist:K or table:FILE)");
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",;\"") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

// coefficient list of x^{-d}-strata, trimmed to the degree (at least one entry)
std::vector<std::string> dense_trimmed(const std::vector<FqPoly>& cs, int degree) {
    std::size_t n = std::size_t(std::max(degree + 1, 1));
    std::vector<std::string> out;
    for (std::size_t d = 0; d < n && d < cs.size(); ++d) out.push_back(cs[d].to_dense());
    if (out.empty()) out.push_back("0");
    return out;
}

std::vector<std::string> dense_all(const std::vector<FqPoly>& cs) {
    std::vector<std::string> out;
    for (const FqPoly& c : cs) out.push_back(c.to_dense());
    return out;
}

int emit(const std::string& s) {
    std::fwrite(s.data(), 1, s.size(), stdout);
    return 0;
}

int emit_json(const json& j) { return emit(j.dump() + "\n"); }

std::string strata_csv(const std::vector<std::string>& coeffs) {
    std::string out = "d,coeff\n";
    for (std::size_t d = 0; d < coeffs.size(); ++d)
        out += std::to_string(d) + "," + csv_field(coeffs[d]) + "\n";
    return out;
}

std::string fmt_or(const RunConfig& cfg, const char* dflt) {
    return cfg.format.empty() ? dflt : cfg.format;
}

std::vector<long long> parse_ints(const std::string& s) {
    std::vector<long long> out;
    for (const std::string& tok : split(s, ',')) out.push_back(std::stoll(tok));
    return out;
}

// ---- subcommand bodies ------------------------------------------------

int run_special(const RunConfig& cfg, const std::string& series, bool check) {
    FqField F = make_field(cfg);
    DirichletSeries L = make_series(F, series);
    CongruenceCondition cond = parse_conds(F, cfg.cond);
    SpecialScan opt;
    opt.d_max = cfg.d_max;
    SpecialPoly z = special_polynomial(L, cfg.j, cond, opt);
    if (check) {
        for (unsigned d = 0; d <= z.d_max; ++d) {
            if (detail::pow_sat(F.q(), d) > (std::uint64_t(1) << 16)) break;
            if (!(z.coeffs[d] == power_sum(L, d, cfg.j, cond))) {
                std::fprintf(stderr, "check failed: stratum %u disagrees with direct enumeration\n",
                             d);
                return 1;
            }
        }
    }
    std::vector<std::string> coeffs = dense_trimmed(z.coeffs, z.degree());
    if (fmt_or(cfg, "json") == "csv") return emit(strata_csv(coeffs));
    json out;
    out["coeffs"] = coeffs;
    return emit_json(out);
}

int run_partial(const RunConfig& cfg, const std::string& series, const std::string& route,
                int depth, std::size_t n_cap, bool check) {
    FqField F = make_field(cfg);
    DirichletSeries L = make_series(F, series);
    CongruenceCondition cond = parse_conds(F, cfg.cond);
    json out;
    std::vector<std::string> coeffs;
    SpecialPoly direct_poly{};
    MeasureRouteResult mr{};
    bool have_direct = false, have_measure = false;

    auto run_direct = [&]() {
        SpecialScan opt;
        opt.d_max = depth;
        direct_poly = special_polynomial(L, cfg.j, cond, opt);
        have_direct = true;
    };
    auto run_measure = [&]() {
        NewtonBasis B(F);
        mr = partial_via_measure(B, L, cond, cfg.j, depth, n_cap);
        have_measure = true;
    };

    if (route == "direct") {
        run_direct();
        coeffs = dense_all(direct_poly.coeffs);
        out["route"] = "direct";
        out["j"] = cfg.j;
        out["d_max"] = direct_poly.d_max;
        out["stabilized"] = direct_poly.stabilized;
        out["coeffs"] = coeffs;
    } else {
        run_measure();
        coeffs = dense_all(mr.poly.coeffs);
        out["route"] = "measure";
        out["j"] = cfg.j;
        out["requested_depth"] = mr.requested_depth;
        out["exact_depth"] = mr.exact_depth;
        out["n_used"] = mr.n_used;
        out["certified"] = mr.certified;
        out["coeffs"] = coeffs;
    }

    int rc = 0;
    if (check) {
        if (!have_direct) run_direct();
        if (!have_measure) run_measure();
        if (!mr.certified) {
            std::fprintf(stderr, "check failed: measure route not certified at depth %d\n", depth);
            rc = 1;
        }
        unsigned top = std::min(direct_poly.d_max, mr.exact_depth);
        for (unsigned d = 0; d <= top; ++d)
            if (!(direct_poly.coeffs[d] == mr.poly.coeffs[d])) {
                std::fprintf(stderr, "check failed: routes disagree at stratum %u\n", d);
                rc = 1;
            }
        json cmp;
        cmp["match"] = rc == 0;
        cmp["strata"] = top + 1;
        out["compare"] = cmp;
    }
    if (fmt_or(cfg, "json") == "csv") {
        int e = emit(strata_csv(coeffs));
        return rc ? rc : e;
    }
    int e = emit_json(out);
    return rc ? rc : e;
}

int run_growth(const RunConfig& cfg, const std::string& series, double c1, double c2,
               bool check) {
    FqField F = make_field(cfg);
    DirichletSeries L = make_series(F, series);
    CongruenceCondition cond = parse_conds(F, cfg.cond);
    if (cfg.j_max < 1) throw std::invalid_argument("growth: --jmax must be at least 1");
    SpecialScan opt;
    opt.d_max = cfg.d_max;
    std::vector<GrowthRow> rows = degree_growth_report(L, cond, cfg.j_max, c1, c2, opt);
    bool all_pass = true;
    for (const GrowthRow& r : rows) all_pass = all_pass && r.pass;

    if (fmt_or(cfg, "csv") == "json") {
        json out;
        out["rows"] = json::array();
        for (const GrowthRow& r : rows) {
            json row;
            row["j"] = r.j;
            row["degree"] = r.degree;
            row["bound"] = r.bound;
            row["pass"] = r.pass;
            out["rows"].push_back(row);
        }
        emit_json(out);
    } else {
        std::string out = "j,degree,bound,pass\n";
        for (const GrowthRow& r : rows)
            out += std::to_string(r.j) + "," + std::to_string(r.degree) + "," +
                   std::to_string(r.bound) + "," + (r.pass ? "true" : "false") + "\n";
        emit(out);
    }
    if (check && !all_pass) {
        std::fprintf(stderr, "check failed: degree bound violated\n");
        return 1;
    }
    return 0;
}

int run_euler(const RunConfig& cfg, const std::string& series, const std::string& factors_path) {
    FqField F = make_field(cfg);
    EulerFactorFn base =
        series == "carlitz" ? euler_carlitz_factors(F) : euler_zeta_factors(F);
    if (series != "zeta" && series != "carlitz")
        throw std::invalid_argument("euler: --series must be zeta or carlitz");

    std::map<FqPoly, FqPoly> overrides;
    if (!factors_path.empty()) {
        overrides = load_table(F, factors_path);
        for (const auto& kv : overrides)
            if (!kv.first.is_monic() || !is_irreducible(kv.first))
                throw std::invalid_argument("euler: factor override key " + kv.first.to_human() +
                                            " is not monic irreducible");
    }
    EulerFactorFn den = [&](const FqPoly& P) -> std::vector<FqPoly> {
        auto it = overrides.find(P);
        if (it == overrides.end()) return base(P);
        if (it->second.is_zero()) return {FqPoly::one(F)};
        return {FqPoly::one(F), -it->second};
    };

    unsigned depth = cfg.d_max >= 0 ? unsigned(cfg.d_max) : 6u;
    std::map<FqPoly, FqPoly> table = euler_expand(F, depth, den);

    if (fmt_or(cfg, "csv") == "json") {
        json out;
        out["table"] = json::array();
        for (unsigned d = 0; d <= depth; ++d)
            for_each_monic(F, d, [&](const FqPoly& a) {
                json row;
                row["a"] = a.to_dense();
                row["b"] = table.at(a).to_dense();
                out["table"].push_back(row);
            });
        return emit_json(out);
    }
    std::string out;
    for (unsigned d = 0; d <= depth; ++d)
        for_each_monic(F, d, [&](const FqPoly& a) {
            out += a.to_dense() + ";" + table.at(a).to_dense() + "\n";
        });
    return emit(out);
}

int run_vadic(const RunConfig& cfg, const std::string& series, const std::string& place,
              unsigned newton_depth, bool check) {
    FqField F = make_field(cfg);
    DirichletSeries L = make_series(F, series);
    FqPoly f = parse_poly(F, place);
    unsigned N = cfg.padic_n;
    CongruenceCondition cond = parse_conds(F, cfg.cond);
    SpecialScan opt;
    opt.d_max = cfg.d_max;

    VadicSpecialPoly v = cond.is_vacuous() && newton_depth == 0
                             ? vadic_special_value(L, cfg.j, f, N, opt)
                             : vadic_vwd_and_partial(f, N, cond, L, cfg.j, opt, newton_depth);

    int rc = 0;
    if (check) {
        // the residue must be the infinite-place partial sums with the local
        // Euler factor removed: S_d - b_f f^j S_{d-deg f} mod f^N
        if (!cond.is_vacuous() || L.twist() < 0)
            throw std::invalid_argument(
                "vadic --check needs a twist family and no condition");
        unsigned dv = unsigned(f.degree());
        std::uint64_t jj = cfg.j + std::uint64_t(L.twist());
        SpecialScan zopt;
        zopt.d_max = int(v.d_max);
        SpecialPoly z = special_polynomial(L, cfg.j, CongruenceCondition(), zopt);
        FqPoly fn = f.pow(N);
        FqPoly fj = detail::powmod(f, jj, fn);
        for (unsigned d = 0; d <= v.d_max; ++d) {
            FqPoly want = z.coeffs[d] % fn;
            if (d >= dv) want = (want - fj * (z.coeffs[d - dv] % fn)) % fn;
            FqPoly diff = (v.coeffs[d] - want) % fn;
            if (!diff.is_zero()) {
                std::fprintf(stderr, "check failed: Euler-removed identity broken at stratum %u\n",
                             d);
                rc = 1;
            }
        }
    }

    std::vector<std::string> coeffs = dense_all(v.coeffs);
    if (fmt_or(cfg, "json") == "csv") {
        int e = emit(strata_csv(coeffs));
        return rc ? rc : e;
    }
    json out;
    out["place"] = f.to_dense();
    out["level"] = N;
    out["j"] = cfg.j;
    out["d_max"] = v.d_max;
    out["stabilized"] = v.stabilized;
    out["newton_terms"] = v.newton_terms;
    out["coeffs"] = coeffs;
    int e = emit_json(out);
    return rc ? rc : e;
}

int run_basis(const RunConfig& cfg, bool check) {
    FqField F = make_field(cfg);
    NewtonBasis B(F);
    unsigned n_max = cfg.n_max;

    std::vector<long long> w;
    std::vector<std::vector<std::string>> p_rows, q_rows;
    for (unsigned n = 0; n <= n_max; ++n) {
        w.push_back(B.weight(n));
        std::vector<std::string> pr, qr;
        for (const LaurentSeries& c : B.newton_poly(n).coeffs()) pr.push_back(c.to_text());
        TateSeries qn = B.qn_poly(n);
        for (const LaurentSeries& c : qn.coeffs()) qr.push_back(c.to_text());
        p_rows.push_back(std::move(pr));
        q_rows.push_back(std::move(qr));
    }

    int rc = 0;
    if (check) {
        // sampled valuation law: v(p_n(x_m)) >= w(n), zero only for m < n
        std::mt19937_64 rng(cfg.seed);
        for (int trial = 0; trial < 32; ++trial) {
            std::uint64_t m = rng() % (4 * std::uint64_t(n_max) + 1);
            std::vector<LaurentSeries> pv = B.newton_values(B.point(m), n_max + 1);
            for (unsigned n = 0; n <= n_max; ++n) {
                bool zero = pv[n].known_zero();
                if (zero && m >= n) {
                    std::fprintf(stderr, "check failed: p_%u vanishes at node %llu\n", n,
                                 (unsigned long long)m);
                    rc = 1;
                } else if (!zero && pv[n].val() < B.weight(n)) {
                    std::fprintf(stderr, "check failed: v(p_%u(x_%llu)) below weight\n", n,
                                 (unsigned long long)m);
                    rc = 1;
                }
            }
        }
    }

    if (fmt_or(cfg, "csv") == "json") {
        json out;
        out["q"] = F.q();
        out["n_max"] = n_max;
        out["w"] = w;
        out["p"] = p_rows;
        out["Q"] = q_rows;
        int e = emit_json(out);
        return rc ? rc : e;
    }
    std::string out = "table,n,k,value\n";
    for (unsigned n = 0; n <= n_max; ++n)
        out += "w," + std::to_string(n) + ",0," + std::to_string(w[n]) + "\n";
    for (unsigned n = 0; n <= n_max; ++n)
        for (std::size_t k = 0; k < p_rows[n].size(); ++k)
            out += "p," + std::to_string(n) + "," + std::to_string(k) + "," +
                   csv_field(p_rows[n][k]) + "\n";
    for (unsigned n = 0; n <= n_max; ++n)
        for (std::size_t k = 0; k < q_rows[n].size(); ++k)
            out += "Q," + std::to_string(n) + "," + std::to_string(k) + "," +
                   csv_field(q_rows[n][k]) + "\n";
    int e = emit(out);
    return rc ? rc : e;
}

int run_measure(const RunConfig& cfg, const std::vector<std::string>& builders,
                const std::string& tag_name, const std::vector<std::string>& act_specs,
                bool transform, bool check) {
    FqField F = make_field(cfg);
    NewtonBasis B(F);
    std::size_t n_max = cfg.n_max;
    if (builders.empty())
        throw std::invalid_argument("measure: need at least one --mu builder");

    auto build = [&](const std::string& spec) -> Measure {
        std::size_t colon = spec.find(':');
        std::string kind = spec.substr(0, colon == std::string::npos ? spec.size() : colon);
        std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
        if (kind == "point")
            return dirac(B, BasisTag::digit, B.point(std::stoull(rest)), n_max);
        if (kind == "dirac")
            return dirac(B, BasisTag::digit, LaurentSeries::parse(F, rest), n_max);
        if (kind == "deriv") return divided_derivative(F, std::stoull(rest), n_max);
        throw std::invalid_argument("bad --mu spec '" + spec +
                                    "' (want point:M, dirac:TEXT or deriv:I)");
    };

    auto fold = [&](const std::vector<std::string>& specs) -> Measure {
        Measure acc = build(specs[0]);
        for (std::size_t i = 1; i < specs.size(); ++i)
            acc = convolve(B, acc, build(specs[i]));
        return acc;
    };
    Measure mu = fold(builders);

    int rc = 0;
    if (check && builders.size() > 1) {
        std::vector<std::string> rev(builders.rbegin(), builders.rend());
        Measure swapped = fold(rev);
        Measure a = convert(B, mu, BasisTag::digit);
        Measure b = convert(B, swapped, BasisTag::digit);
        for (std::size_t n = 0; n <= n_max; ++n)
            if (!(a.coeff(n) - b.coeff(n)).known_zero()) {
                std::fprintf(stderr, "check failed: convolution not commutative at n=%zu\n", n);
                rc = 1;
            }
    }

    BasisTag tag = tag_name == "newton" ? BasisTag::newton : BasisTag::digit;
    Measure shown = convert(B, mu, tag);
    std::vector<std::string> coeffs;
    for (const LaurentSeries& c : shown.coeffs()) coeffs.push_back(c.to_text());

    Measure digit_view = convert(B, mu, BasisTag::digit);
    std::vector<std::string> action, trans;
    for (const std::string& spec : act_specs) {
        std::vector<LaurentSeries> a;
        for (const std::string& t : split(spec, '|')) a.push_back(LaurentSeries::parse(F, t));
        for (const LaurentSeries& c : act(B, digit_view, a)) action.push_back(c.to_text());
    }
    if (transform) {
        TateSeries ts = transform_series(F, digit_view.coeffs());
        for (const LaurentSeries& c : ts.coeffs()) trans.push_back(c.to_text());
    }

    if (fmt_or(cfg, "json") == "csv") {
        std::string out = "row,k,value\n";
        for (std::size_t k = 0; k < coeffs.size(); ++k)
            out += "coeff," + std::to_string(k) + "," + csv_field(coeffs[k]) + "\n";
        for (std::size_t k = 0; k < action.size(); ++k)
            out += "action," + std::to_string(k) + "," + csv_field(action[k]) + "\n";
        for (std::size_t k = 0; k < trans.size(); ++k)
            out += "transform," + std::to_string(k) + "," + csv_field(trans[k]) + "\n";
        int e = emit(out);
        return rc ? rc : e;
    }
    json out;
    out["q"] = F.q();
    out["n_max"] = n_max;
    out["tag"] = tag_name;
    out["coeffs"] = coeffs;
    if (!act_specs.empty()) out["action"] = action;
    if (transform) out["transform"] = trans;
    int e = emit_json(out);
    return rc ? rc : e;
}

int run_padic(const RunConfig& cfg, unsigned deg_d, const std::string& values,
              const std::string& coeffs, std::uint64_t points, const std::string& iwasawa,
              long long eigen_m, bool check) {
    unsigned p = cfg.p;
    unsigned N = cfg.padic_n;
    json out;
    out["p"] = p;
    out["prec"] = N;
    out["deg"] = deg_d;
    bool did = false;
    int rc = 0;

    if (!values.empty()) {
        std::vector<PadicInt> vals;
        for (long long v : parse_ints(values)) vals.push_back(PadicInt(p, N, v));
        std::vector<PadicInt> mc = mahler_from_values(vals);
        json list = json::array();
        for (const PadicInt& c : mc) list.push_back(std::to_string(c.residue()));
        out["mahler"] = list;
        if (check) {
            MahlerFunction f(p, N, mc);
            for (std::size_t i = 0; i < vals.size(); ++i)
                if (f.value(i).residue() != vals[i].residue()) {
                    std::fprintf(stderr, "check failed: Mahler round trip at m=%zu\n", i);
                    rc = 1;
                }
        }
        did = true;
    }
    if (!coeffs.empty()) {
        std::vector<PadicInt> mc;
        for (long long v : parse_ints(coeffs)) mc.push_back(PadicInt(p, N, v));
        MahlerFunction f(p, N, mc);
        json list = json::array();
        for (std::uint64_t m = 0; m < points; ++m)
            list.push_back(std::to_string(f.value(m).residue()));
        out["values"] = list;
        did = true;
    }
    if (!iwasawa.empty()) {
        std::vector<PadicInt> ic;
        for (long long v : parse_ints(iwasawa)) ic.push_back(PadicInt(p, N, v));
        IwasawaSeries f(p, N, deg_d, ic);
        json list = json::array();
        for (unsigned i = 0; i <= deg_d; ++i) list.push_back(std::to_string(f.coeff(i).residue()));
        out["iwasawa"] = list;
        if (eigen_m >= 0) {
            bool ok = eigen_check(f, PadicInt(p, N, eigen_m), deg_d);
            out["eigen"] = ok;
            if (check && !ok) {
                std::fprintf(stderr, "check failed: eigenvalue law at m=%lld\n", eigen_m);
                rc = 1;
            }
        }
        did = true;
    }
    if (!did)
        throw std::invalid_argument(
            "padic: nothing to do (give --values, --coeffs/--points or --iwasawa)");
    int e = emit_json(out);
    return rc ? rc : e;
}

int run_subgroup(const RunConfig& cfg, const std::vector<std::string>& gens, std::uint64_t i) {
    FqField F = make_field(cfg);
    std::vector<FqPoly> g;
    for (const std::string& s : gens) g.push_back(parse_poly(F, s));
    AdditiveSubgroup W(F, g);
    FqPoly s = power_sum_subgroup(W, i);
    if (fmt_or(cfg, "txt") == "json") {
        json out;
        out["q"] = F.q();
        out["i"] = i;
        out["value"] = s.to_dense();
        return emit_json(out);
    }
    return emit(s.to_dense() + "\n");
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    std::string config_path;
    for (int i = 1; i < argc; ++i) {
        std::string s = argv[i];
        if (s == "--config" && i + 1 < argc) config_path = argv[i + 1];
        else if (s.rfind("--config=", 0) == 0) config_path = s.substr(9);
    }
    if (!config_path.empty()) {
        try {
            std::ifstream in(config_path);
            if (!in) throw std::invalid_argument("cannot open config file " + config_path);
            json j = json::parse(in);
            config_from_json(j, cfg);
        } catch (const std::exception& ex) {
            std::fprintf(stderr, "error: %s\n", ex.what());
            return 2;
        }
    }

    CLI::App app{"function-field zeta toolkit: power sums, special polynomials, measures"};
    app.add_option("--config", config_path,
                   "JSON config file; explicit flags override its values");
    app.require_subcommand(1);

    bool check = false;
    bool q_set = false, p_set = false;
    std::string series = "zeta";
    auto field_flags = [&](CLI::App* s) {
        s->add_option("--q", cfg.q, "field size (prime; use --p/--modulus for extensions)")
            ->each([&q_set](const std::string&) { q_set = true; });
        s->add_option("--p", cfg.p, "characteristic")
            ->each([&p_set](const std::string&) { p_set = true; });
        s->add_option("--modulus", cfg.modulus, "defining polynomial over F_p, dense digits");
        s->add_option("--format", cfg.format, "output format")
            ->check(CLI::IsMember({"json", "csv"}));
        s->add_option("--seed", cfg.seed, "seed for randomized --check sampling");
        s->add_flag("--check", check, "turn module invariants into hard checks");
    };
    auto series_flag = [&](CLI::App* s) {
        s->add_option("--series", series, "coefficient family: zeta|carlitz|twist:K|table:FILE");
    };
    auto cond_flag = [&](CLI::App* s) {
        s->add_option("--cond", cfg.cond,
                      "congruence condition, inf:LEVEL:DIGITS or fin:BASE:EXP:RESIDUE");
    };

    CLI::App* c_config = app.add_subcommand("config", "print the effective run configuration");
    field_flags(c_config);
    c_config->add_option("--prec", cfg.prec, "Laurent working window");
    c_config->add_option("--prec-N", cfg.padic_n, "p-adic / place-adic precision");
    c_config->add_option("--digits-M", cfg.digits_m, "exponent digit budget");
    c_config->add_option("--n-max", cfg.n_max, "basis truncation");
    c_config->add_option("--dmax", cfg.d_max, "stratum cap (-1: scan to stabilization)");
    c_config->add_option("--j", cfg.j, "exponent");
    c_config->add_option("--jmax", cfg.j_max, "exponent sweep bound");
    cond_flag(c_config);

    CLI::App* c_basis = app.add_subcommand("basis", "interpolation basis tables p_n, Q_n, w(n)");
    field_flags(c_basis);
    c_basis->add_option("--n-max", cfg.n_max, "largest basis index");
    c_basis->add_option("--prec", cfg.prec, "working precision for --check sampling");

    CLI::App* c_measure = app.add_subcommand("measure", "build and combine measures");
    field_flags(c_measure);
    std::vector<std::string> mu_specs, act_specs;
    std::string tag_name = "digit";
    bool transform = false;
    c_measure->add_option("--n-max", cfg.n_max, "coefficient truncation");
    c_measure->add_option("--mu", mu_specs,
                          "measure builder (point:M, dirac:TEXT, deriv:I); repeat to convolve");
    c_measure->add_option("--tag", tag_name, "output basis")
        ->check(CLI::IsMember({"digit", "newton"}));
    c_measure->add_option("--act", act_specs,
                          "apply the measure action to digit coefficients c0|c1|...");
    c_measure->add_flag("--transform", transform, "emit the associated power series");

    CLI::App* c_padic = app.add_subcommand("padic", "Mahler and Iwasawa computations");
    field_flags(c_padic);
    unsigned deg_d = 8;
    std::string values, mahler_coeffs, iwasawa;
    std::uint64_t points = 8;
    long long eigen_m = -1;
    c_padic->add_option("--prec-N", cfg.padic_n, "p-adic precision");
    c_padic->add_option("--deg-D", deg_d, "series truncation degree");
    c_padic->add_option("--values", values, "integer values f(0),f(1),... -> Mahler coefficients");
    c_padic->add_option("--coeffs", mahler_coeffs, "Mahler coefficients -> values");
    c_padic->add_option("--points", points, "number of values to evaluate for --coeffs");
    c_padic->add_option("--iwasawa", iwasawa, "power series coefficients c0,c1,...");
    c_padic->add_option("--eigen", eigen_m, "check the eigenvalue law at this point");

    CLI::App* c_zeta = app.add_subcommand("zeta", "special polynomials and their shadows");
    c_zeta->require_subcommand(1);

    CLI::App* z_special = c_zeta->add_subcommand("special", "special polynomial at -j");
    field_flags(z_special);
    series_flag(z_special);
    cond_flag(z_special);
    z_special->add_option("--j", cfg.j, "exponent");
    z_special->add_option("--dmax", cfg.d_max, "stratum cap (-1: scan to stabilization)");

    CLI::App* z_partial = c_zeta->add_subcommand("partial", "partial sums by direct or measure route");
    field_flags(z_partial);
    series_flag(z_partial);
    cond_flag(z_partial);
    std::string route;
    int depth = -1;
    std::size_t n_cap = 1024;
    z_partial->add_option("--j", cfg.j, "exponent");
    z_partial->add_option("--route", route, "computation route")
        ->check(CLI::IsMember({"direct", "measure"}))
        ->required();
    z_partial->add_option("--depth", depth, "strata to certify (-1: automatic)");
    z_partial->add_option("--n-cap", n_cap, "interpolation coefficient budget");

    CLI::App* z_growth = c_zeta->add_subcommand("growth", "degree growth against the log bound");
    field_flags(z_growth);
    series_flag(z_growth);
    cond_flag(z_growth);
    double c1 = 1.0, c2 = 0.0;
    z_growth->add_option("--jmax", cfg.j_max, "check j = 1..jmax")->required();
    z_growth->add_option("--c1", c1, "bound slope");
    z_growth->add_option("--c2", c2, "bound offset");

    CLI::App* z_euler = c_zeta->add_subcommand("euler", "Dirichlet coefficients from Euler factors");
    field_flags(z_euler);
    series_flag(z_euler);
    std::string factors_path;
    z_euler->add_option("--dmax", cfg.d_max, "largest coefficient degree");
    z_euler->add_option("--factors", factors_path,
                        "coefficient-table file P;b overriding local factors to 1 - b u");

    CLI::App* c_vadic = app.add_subcommand("vadic", "special values at a finite place");
    field_flags(c_vadic);
    series_flag(c_vadic);
    cond_flag(c_vadic);
    std::string place;
    unsigned newton_depth = 0;
    c_vadic->add_option("--f", place, "monic irreducible place polynomial")->required();
    c_vadic->add_option("--level-N", cfg.padic_n, "work modulo f^N");
    c_vadic->add_option("--j", cfg.j, "exponent");
    c_vadic->add_option("--dmax", cfg.d_max, "stratum cap (-1: scan to stabilization)");
    c_vadic->add_option("--newton-depth", newton_depth,
                        "minimum interpolation terms (0: direct route)");

    CLI::App* c_ps = app.add_subcommand("power-sums", "power sums over additive subgroups");
    c_ps->require_subcommand(1);
    CLI::App* ps_sub = c_ps->add_subcommand("subgroup", "sum of w^i over the span of the generators");
    field_flags(ps_sub);
    std::vector<std::string> gens;
    std::uint64_t exp_i = 0;
    ps_sub->add_option("--gens", gens, "generators (dense or human polynomial)")->required();
    ps_sub->add_option("--i", exp_i, "exponent")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        validate(cfg, q_set, p_set);
        if (c_config->parsed()) return emit(config_to_json(cfg).dump(2) + "\n");
        if (c_basis->parsed()) return run_basis(cfg, check);
        if (c_measure->parsed())
            return run_measure(cfg, mu_specs, tag_name, act_specs, transform, check);
        if (c_padic->parsed())
            return run_padic(cfg, deg_d, values, mahler_coeffs, points, iwasawa, eigen_m, check);
        if (c_zeta->parsed()) {
            if (z_special->parsed()) return run_special(cfg, series, check);
            if (z_partial->parsed()) return run_partial(cfg, series, route, depth, n_cap, check);
            if (z_growth->parsed()) return run_growth(cfg, series, c1, c2, check);
            if (z_euler->parsed()) return run_euler(cfg, series, factors_path);
        }
        if (c_vadic->parsed()) return run_vadic(cfg, series, place, newton_depth, check);
        if (c_ps->parsed() && ps_sub->parsed()) return run_subgroup(cfg, gens, exp_i);
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return 3;
    }
    return 0;
}
