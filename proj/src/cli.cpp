#include "srdesign/cli.hpp"

#include <cctype>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "srdesign/catalog.hpp"
#include "srdesign/designs.hpp"
#include "srdesign/families.hpp"
#include "srdesign/io.hpp"
#include "srdesign/lifting.hpp"

namespace srd::cli {

namespace {
std::string read_input(const std::string& path) {
    if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

FamilyFile load(const std::string& path) {
    try {
        return parse_family(read_input(path));
    } catch (const ParseError& e) {
        throw InputError(path + ": " + e.what());
    }
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write " + path);
    f << text;
}

void write_cert(const std::string& input, const nlohmann::ordered_json& cert, bool enabled, std::ostream& err) {
    if (!enabled || input == "-") return;
    const std::string path = input + ".cert";
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        err << "warning: cannot write " << path << "\n";
        return;
    }
    f << cert.dump(2) << "\n";
}

}  // namespace

BigInt parse_big(const std::string& text) {
    if (text.empty()) throw InputError("empty integer");
    if (text.back() == '*') throw InputError("not an integer expression: " + text);
    BigInt out = 1;
    std::stringstream terms(text);
    std::string term;
    while (std::getline(terms, term, '*')) {
        const auto caret = term.find('^');
        const std::string base = term.substr(0, caret);
        const std::string exp = caret == std::string::npos ? "1" : term.substr(caret + 1);
        auto digits = [](const std::string& s) {
            return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
        };
        if (!digits(base) || !digits(exp) || exp.size() > 6) throw InputError("not an integer expression: " + text);
        const BigInt b(base);
        const unsigned e = static_cast<unsigned>(std::stoul(exp));
        for (unsigned i = 0; i < e; ++i) out *= b;
    }
    return out;
}

namespace {

std::uint64_t to_u64(const BigInt& x, const char* what) {
    if (x < 0 || x > BigInt(UINT64_MAX)) throw InputError(std::string(what) + " does not fit in 64 bits");
    return static_cast<std::uint64_t>(x);
}

FiniteField field_from(std::uint64_t p, std::uint64_t n, const std::string& modulus) {
    std::optional<Polynomial> mod;
    if (!modulus.empty()) mod = parse_polynomial(modulus);
    return make_field(static_cast<std::int64_t>(p), static_cast<std::int64_t>(n), mod);
}

std::vector<std::uint32_t> parse_orders(const std::string& text) {
    std::vector<std::uint32_t> out;
    std::stringstream ss(text);
    std::string t;
    while (std::getline(ss, t, ',')) {
        if (t.empty() || !std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); }))
            throw InputError("bad cyclic order list: " + text);
        out.push_back(static_cast<std::uint32_t>(std::stoul(t)));
    }
    if (out.empty()) throw InputError("empty cyclic order list");
    return out;
}

std::string coverage_line(const CoverageVerdict& c) {
    std::uint64_t lo = UINT64_MAX, hi = 0;
    for (auto x : c.map.counts) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    return "coverage total " + std::to_string(c.map.total) + ", min " + std::to_string(lo) + ", max " + std::to_string(hi);
}

nlohmann::ordered_json coverage_json(const CoverageVerdict& c, const Carrier& carrier) {
    std::uint64_t lo = UINT64_MAX, hi = 0;
    for (auto x : c.map.counts) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    nlohmann::ordered_json j;
    j["total"] = c.map.total;
    j["min"] = lo;
    j["max"] = hi;
    j["constant_lambda"] = c.constant_lambda ? nlohmann::ordered_json(*c.constant_lambda) : nlohmann::ordered_json();
    j["excluded_uncovered"] = c.excluded_uncovered;
    j["witness"] = c.witness ? detail::element_to_json(carrier, *c.witness) : nlohmann::ordered_json();
    return j;
}

struct Context {
    std::ostream& out;
    std::ostream& err;
    bool cert = true;
};

int verify_file(const std::string& kind, const std::string& path, bool require_super_regular, Context& ctx) {
    const FamilyFile f = load(path);
    const Carrier carrier = resolve(f.carrier);
    nlohmann::ordered_json cert;
    cert["input"] = path;
    cert["role"] = f.role;
    const std::string expected = kind == "df" ? "rdf" : kind;
    if (f.role != expected) throw InputError(path + ": role is " + f.role + ", expected " + expected);
    int code = kOk;
    if (f.role == "sdf") {
        const auto sdf = to_sdf(f);
        const auto v = verify_sdf(sdf);
        const std::string head = "SDF(" + std::to_string(sdf.group.order()) + "," + std::to_string(sdf.k) + "," +
                                 std::to_string(sdf.lambda) + ")";
        if (v.is_sdf)
            ctx.out << head << (v.is_additive ? " additive" : " not additive") << "\n";
        else
            ctx.out << "not an " << head << ": " << v.reason << "\n";
        ctx.out << coverage_line(v.coverage) << "\n";
        cert["verdict"] = v.is_sdf;
        cert["additive"] = v.is_additive;
        cert["parameters"] = {{"v", sdf.group.order()}, {"k", sdf.k}, {"lambda", sdf.lambda}, {"blocks", sdf.blocks.size()}};
        cert["coverage"] = coverage_json(v.coverage, carrier);
        cert["reason"] = v.reason;
        code = v.is_sdf ? kOk : kNegative;
    } else if (f.role == "rdf") {
        const auto loaded = to_rdf(f);
        const auto& rdf = loaded.rdf;
        const auto v = verify_rdf(rdf);
        const std::string head = "DF(" + std::to_string(rdf.group.order()) + "," + std::to_string(rdf.k) + "," +
                                 std::to_string(rdf.lambda) + ")";
        if (v.is_rdf)
            ctx.out << head << " relative to " << rdf.forbidden.members().size() << " forbidden subgroup(s)"
                    << (v.is_additive ? ", additive" : ", not additive") << "\n";
        else
            ctx.out << "not a " << head << ": " << v.reason << "\n";
        ctx.out << coverage_line(v.coverage) << "\n";
        cert["verdict"] = v.is_rdf;
        cert["additive"] = v.is_additive;
        cert["parameters"] = {{"v", rdf.group.order()}, {"k", rdf.k}, {"lambda", rdf.lambda}, {"blocks", rdf.blocks.size()},
                              {"forbidden_members", rdf.forbidden.members().size()}};
        cert["coverage"] = coverage_json(v.coverage, carrier);
        cert["reason"] = v.reason;
        code = v.is_rdf ? kOk : kNegative;
    } else if (f.role == "dm") {
        const auto dm = to_dm(f);
        const auto v = verify_dm(dm);
        const std::string head =
            "DM(" + std::to_string(dm.group.order()) + "," + std::to_string(dm.k) + "," + std::to_string(dm.mu) + ")";
        if (v.is_dm)
            ctx.out << head << (v.is_additive ? " additive" : " not additive") << "\n";
        else
            ctx.out << "not a " << head << ": " << v.reason << "\n";
        cert["verdict"] = v.is_dm;
        cert["additive"] = v.is_additive;
        cert["parameters"] = {{"h", dm.group.order()}, {"k", dm.k}, {"mu", dm.mu}, {"columns", dm.columns.size()}};
        cert["reason"] = v.reason;
        code = v.is_dm ? kOk : kNegative;
    } else {
        const Design d = to_design(f);
        const auto v = verify_design(d);
        const std::string head = "2-(" + std::to_string(d.v()) + "," + std::to_string(d.k()) + "," +
                                 (v.lambda_found ? std::to_string(*v.lambda_found) : std::string("?")) + ")";
        if (v.is_design) {
            ctx.out << head << " design, " << d.block_count() << " blocks, "
                    << (v.is_simple ? "simple" : "not simple (max multiplicity " + std::to_string(v.max_block_multiplicity) + ")");
            if (v.replication) ctx.out << ", r=" << *v.replication;
            ctx.out << ", " << v.pair_incidences << " pair incidences\n";
        } else {
            ctx.out << "not a design: " << v.reason << "\n";
        }
        cert["verdict"] = v.is_design;
        cert["parameters"] = {{"v", d.v()}, {"k", d.k()}, {"lambda", d.lambda()}, {"blocks", d.block_count()}};
        cert["lambda_found"] = v.lambda_found ? nlohmann::ordered_json(*v.lambda_found) : nlohmann::ordered_json();
        cert["simple"] = v.is_simple;
        cert["max_block_multiplicity"] = v.max_block_multiplicity;
        cert["pair_incidences"] = v.pair_incidences;
        cert["replication"] = v.replication ? nlohmann::ordered_json(*v.replication) : nlohmann::ordered_json();
        if (v.witness)
            cert["witness"] = {detail::element_to_json(carrier, Element{v.witness->first}),
                               detail::element_to_json(carrier, Element{v.witness->second})};
        else
            cert["witness"] = nullptr;
        cert["witness_count"] = v.witness_count;
        cert["reason"] = v.reason;
        code = v.is_design ? kOk : kNegative;
        if (v.is_design && d.lambda() != 0 && v.lambda_found && *v.lambda_found != d.lambda()) {
            ctx.out << "declared lambda " << d.lambda() << " differs from the found " << *v.lambda_found << "\n";
            code = kNegative;
        }
        const auto sr = verify_super_regular(d, carrier.group);
        ctx.out << "regular: " << (sr.is_regular ? "yes" : "no") << ", strictly additive: "
                << (sr.is_strictly_additive ? "yes" : "no") << ", super-regular: " << (sr.is_super_regular ? "yes" : "no");
        if (sr.is_regular) ctx.out << " (" << sr.orbits << " orbits)";
        if (!sr.reason.empty()) ctx.out << "; " << sr.reason;
        ctx.out << "\n";
        cert["super_regular"] = {{"regular", sr.is_regular},
                                 {"strictly_additive", sr.is_strictly_additive},
                                 {"super_regular", sr.is_super_regular},
                                 {"orbits", sr.orbits},
                                 {"reason", sr.reason}};
        if (require_super_regular && !sr.is_super_regular) code = kNegative;
    }
    write_cert(path, cert, ctx.cert, ctx.err);
    return code;
}

int admissibility(const std::string& vtext, const std::string& ktext, Context& ctx) {
    const BigInt k = parse_big(ktext);
    if (vtext.empty()) {
        const std::uint64_t k64 = to_u64(k, "k");
        if (k64 < 3) throw InputError("k must be at least 3");
        const auto verdict = classify_k(k64);
        ctx.out << render(verdict);
        const auto s = main_status(k64);
        if (s == MainStatus::two_pow_times_three) {
            unsigned n = 0;
            for (std::uint64_t m = k64 / 3; m > 1; m >>= 1) ++n;
            if (n >= 1 && n <= 61) {
                const auto t = theorem43_enumerate(n);
                ctx.out << "single-orbit v for k=" << k64 << ": ord_" << (k64 - 1) << "(2) = " << t.order << ", n^2-n = " << t.bound
                        << ", v in {";
                for (std::size_t i = 0; i < t.admissible_v.size(); ++i) ctx.out << (i ? ", " : "") << to_string(t.admissible_v[i]);
                ctx.out << "}\n";
            }
        }
        return verdict.all_pass() ? kOk : kNegative;
    }
    const BigInt v = parse_big(vtext);
    if (k < 2 || v < k) throw InputError("need v >= k >= 2");
    const auto strict = strict_additive_necessary(v, k);
    const auto sr = super_regular_necessary(v, k);
    ctx.out << "strictly additive necessary conditions\n" << render(strict);
    ctx.out << "super-regular necessary conditions\n" << render(sr);
    bool ok = sr.all_pass();
    if (v % k == 0) {
        const auto t = theorem41_42(v, k);
        ctx.out << "mod 3 exclusion\n" << render(t.params) << "outcome: " << to_string(t.outcome) << "\n";
        if (t.outcome == NonexistenceOutcome::nonexistent) ok = false;
    }
    ctx.out << (ok ? "admissible" : "not admissible") << "\n";
    return ok ? kOk : kNegative;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Context ctx{out, err};
    CLI::App app{"Build and verify difference families and the designs they generate", "srdesign"};
    app.require_subcommand(1);
    bool no_cert = false;
    app.add_flag("--no-cert", no_cert, "Do not write .cert files");

    // verify
    auto* verify = app.add_subcommand("verify", "Verify a family or design file");
    std::string verify_kind, verify_path;
    bool require_sr = false;
    verify->add_option("kind", verify_kind, "sdf | df | dm | design")->required()->check(CLI::IsMember({"sdf", "df", "rdf", "dm", "design"}));
    verify->add_option("file", verify_path, "Input file, - for stdin")->required();
    verify->add_flag("--require-super-regular", require_sr, "Designs must also be super-regular");

    // build
    auto* build = app.add_subcommand("build", "Construct a family or design");
    std::string build_kind, build_out, modulus, group_orders = "3", sdf_path, dm_path;
    std::uint64_t bp = 0, bn = 1, bq = 0, bk = 0, cap = 1'000'000;
    unsigned ag_n = 2;
    build->add_option("kind", build_kind, "paley | theorem82 | zero-sum-dm | ag | jungnickel")
        ->required()
        ->check(CLI::IsMember({"paley", "theorem82", "zero-sum-dm", "ag", "jungnickel"}));
    build->add_option("-o,--output", build_out, "Output file (default stdout)");
    build->add_option("--q", bq, "Field order (paley, ag)");
    build->add_option("--p", bp, "Characteristic (paley), overrides --q");
    build->add_option("--n", bn, "Extension degree (paley with --p)");
    build->add_option("--modulus", modulus, "Ascending modulus coefficients, e.g. 2,1,1");
    build->add_option("--k", bk, "Block size (theorem82, zero-sum-dm)");
    build->add_option("--group", group_orders, "Cyclic orders of H (zero-sum-dm)");
    build->add_option("--cap", cap, "Column cap (zero-sum-dm)");
    build->add_option("--dim", ag_n, "Dimension (ag)");
    build->add_option("--sdf", sdf_path, "SDF file (jungnickel)");
    build->add_option("--dm", dm_path, "DM file (jungnickel)");

    // lift
    auto* lift = app.add_subcommand("lift", "Lift an SDF to a relative difference family over G x GF(q)");
    std::string lift_in, lift_out, strategy = "greedy", lift_modulus;
    std::uint64_t lp = 0, ln = 1, seed = 0, budget = kDefaultBudget, psi_tries = 200, half_lambda = 0;
    bool signed_mode = false;
    lift->add_option("sdf", lift_in, "SDF file")->required();
    lift->add_option("--p", lp, "Field characteristic")->required();
    lift->add_option("--n", ln, "Field degree");
    lift->add_option("--modulus", lift_modulus, "Ascending modulus coefficients");
    lift->add_option("--strategy", strategy, "greedy | zero-sum | signed | simple")
        ->check(CLI::IsMember({"greedy", "zero-sum", "signed", "simple"}));
    lift->add_option("--seed", seed, "Search seed; 0 keeps the canonical order");
    lift->add_option("--budget", budget, "Node budget per search");
    lift->add_option("--psi-tries", psi_tries, "Number of psi assignments to try (greedy, zero-sum)");
    lift->add_option("--half-lambda", half_lambda, "Class index for signed lifting (default lambda/2)");
    lift->add_flag("--signed", signed_mode, "Signed variant of the simple lifting");
    lift->add_option("-o,--output", lift_out, "Output file (default stdout)");

    // develop
    auto* dev = app.add_subcommand("develop", "Develop a relative difference family into a design");
    std::string dev_in, dev_out;
    std::uint64_t copies = 0;
    dev->add_option("file", dev_in, "DF file")->required();
    dev->add_option("--copies", copies, "Copies of each forbidden coset (default lambda)");
    dev->add_option("-o,--output", dev_out, "Output file (default stdout)");

    // extend
    auto* ext = app.add_subcommand("extend", "Expand a DF over G x GF(q) to G x GF(q^n)");
    std::string ext_in, ext_out, ext_modulus;
    unsigned degree = 2;
    ext->add_option("file", ext_in, "DF file with forbidden set base")->required();
    ext->add_option("--degree", degree, "Extension degree n")->required();
    ext->add_option("--modulus", ext_modulus, "Modulus for GF(q^n)");
    ext->add_option("-o,--output", ext_out, "Output file (default stdout)");

    // anomaly
    auto* anom = app.add_subcommand("anomaly", "Search for a line pair whose closure is not a plane");
    std::string anom_in;
    std::uint64_t anom_p = 0, anom_cap = 10'000;
    anom->add_option("file", anom_in, "Design or DF file")->required();
    anom->add_option("--p", anom_p, "Prime (default k)");
    anom->add_option("--cap", anom_cap, "Pairs to scan");

    // admissibility
    auto* adm = app.add_subcommand("admissibility", "Arithmetic conditions on (v,k) or k");
    std::string adm_v, adm_k;
    adm->add_option("--v", adm_v, "Number of points, e.g. 234375 or 3*5^7");
    adm->add_option("--k", adm_k, "Block size")->required();

    // catalog
    auto* cat = app.add_subcommand("catalog", "Built-in fixtures");
    cat->require_subcommand(1);
    auto* cat_list = cat->add_subcommand("list", "List fixture names");
    auto* cat_emit = cat->add_subcommand("emit", "Print a fixture");
    std::string cat_name, cat_out;
    cat_emit->add_option("name", cat_name, "Fixture name")->required();
    cat_emit->add_option("-o,--output", cat_out, "Output file (default stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << "run with --help for usage\n";
        return kUsage;
    }
    ctx.cert = !no_cert;

    try {
        if (*verify) return verify_file(verify_kind == "rdf" ? "df" : verify_kind, verify_path, require_sr, ctx);

        if (*build) {
            if (build_kind == "paley") {
                FiniteField f;
                if (bp) {
                    f = field_from(bp, bn, modulus);
                } else {
                    const auto pp = as_prime_power(bq);
                    if (!pp) throw InputError("--q must be a prime power");
                    f = field_from(pp->prime, static_cast<std::uint64_t>(pp->exponent), modulus);
                }
                const auto sdf = paley_sdf(f);
                write_output(build_out, render_family(sdf_file(sdf, carrier_spec(f), "paley-" + std::to_string(f.order()))), out);
                err << "built SDF(" << f.order() << "," << sdf.k << "," << sdf.lambda << ")\n";
                return kOk;
            }
            if (build_kind == "theorem82") {
                const auto core = theorem82_core_sdf(bk);
                write_output(build_out,
                             render_family(sdf_file(core.sdf, carrier_spec(core.field), "theorem82-" + std::to_string(bk))), out);
                err << "built SDF(" << core.q << "," << core.sdf.k << "," << core.sdf.lambda << ") with q=" << core.q
                    << ", r=" << core.r << "; alpha(0)=" << core.alpha[Element{0}] << ", beta(0)=" << core.beta[Element{0}]
                    << ", sigma(0)=" << core.sigma[Element{0}] << "\n";
                return kOk;
            }
            if (build_kind == "zero-sum-dm") {
                const AbelianGroup h(parse_orders(group_orders));
                const auto dm = zero_sum_dm(h, static_cast<std::uint32_t>(bk), cap);
                write_output(build_out, render_family(dm_file(dm, carrier_spec(h), "zero-sum-dm")), out);
                err << "built DM(" << h.order() << "," << dm.k << "," << dm.mu << ")\n";
                return kOk;
            }
            if (build_kind == "ag") {
                const Design d = ag_design(ag_n, bq);
                write_output(build_out, render_family(design_file(d, carrier_spec(*d.group()), "ag")), out);
                err << "built 2-(" << d.v() << "," << d.k() << ",1) with " << d.block_count() << " lines\n";
                return kOk;
            }
            // jungnickel
            if (sdf_path.empty() || dm_path.empty()) throw InputError("jungnickel needs --sdf and --dm");
            const auto sdf = to_sdf(load(sdf_path));
            const auto dm = to_dm(load(dm_path));
            const auto composed = jungnickel_compose(sdf, dm);
            write_output(build_out, render_family(sdf_file(composed, carrier_spec(composed.group), "jungnickel")), out);
            err << "built SDF(" << composed.group.order() << "," << composed.k << "," << composed.lambda << ")\n";
            return kOk;
        }

        if (*lift) {
            const auto sdf = to_sdf(load(lift_in));
            const FiniteField field = field_from(lp, ln, lift_modulus);
            const ProductCarrier carrier(sdf.group, field);
            if (sdf.group.cyclic_orders().empty()) throw InputError("empty group");
            std::optional<ProductFamily> fam;
            if (strategy == "simple") {
                fam = simple_lift(sdf, field, std::nullopt, signed_mode);
            } else {
                Lifting lifting;
                MultiplierSet m;
                if (strategy == "signed") {
                    const std::uint64_t hl = half_lambda ? half_lambda : sdf.lambda / 2;
                    lifting = signed_lift(sdf, field, static_cast<std::uint32_t>(hl), budget, seed);
                    m = signed_multipliers(field, hl);
                } else {
                    const auto lambda = static_cast<std::uint32_t>(sdf.lambda);
                    auto search = [&](const StrongDifferenceFamily& s, const FiniteField& f, const PsiAssignment& psi) {
                        return strategy == "greedy" ? greedy_lift(s, f, psi, budget, seed) : zero_sum_lift(s, f, psi, budget, seed);
                    };
                    auto found = lift_over_psi_seeds(sdf, field, lambda, seed, psi_tries, search);
                    err << "psi seed " << found.psi_seed << "\n";
                    lifting = std::move(found.lifting);
                    m = class_multipliers(field, lambda);
                }
                err << "search: " << lifting.stats.nodes << " nodes, deepest level " << lifting.stats.deepest << "\n";
                auto outcome = apply_multipliers(lifting, m);
                if (!outcome.ok) {
                    err << "multipliers rejected: " << outcome.reason << "\n";
                    return kNegative;
                }
                fam = std::move(*outcome.family);
            }
            const auto v = verify_rdf(fam->rdf);
            if (!v.is_rdf) {
                err << "lifted family fails verification: " << v.reason << "\n";
                return kNegative;
            }
            write_output(lift_out, render_family(rdf_file(fam->rdf, carrier_spec(fam->carrier), ForbiddenSpec{true, {}}, "lift-" + strategy)),
                         out);
            err << "built DF(" << fam->rdf.group.order() << "," << fam->rdf.k << "," << fam->rdf.lambda << ")"
                << (v.is_additive ? " additive" : "") << ", " << fam->rdf.blocks.size() << " base blocks\n";
            return kOk;
        }

        if (*dev) {
            const FamilyFile f = load(dev_in);
            const auto loaded = to_rdf(f);
            const auto v = verify_rdf(loaded.rdf);
            if (!v.is_rdf) {
                err << "input does not verify: " << v.reason << "\n";
                return kNegative;
            }
            const Design d = develop(loaded.rdf, copies ? std::optional<std::uint64_t>(copies) : std::nullopt);
            write_output(dev_out, render_family(design_file(d, f.carrier, f.name ? std::optional<std::string>(*f.name + "-developed") : std::nullopt)), out);
            err << "developed 2-(" << d.v() << "," << d.k() << "," << d.lambda() << ") with " << d.block_count() << " blocks\n";
            return kOk;
        }

        if (*ext) {
            const FamilyFile f = load(ext_in);
            const auto loaded = to_rdf(f);
            const auto product = loaded.carrier.product();
            if (!product || !f.forbidden || !f.forbidden->base)
                throw InputError(ext_in + ": extend needs a G x GF(q) carrier with forbidden set base");
            std::optional<Polynomial> mod;
            if (!ext_modulus.empty()) mod = parse_polynomial(ext_modulus);
            const auto big = extend_field(ProductFamily{*product, loaded.rdf}, degree, mod);
            const auto v = verify_rdf(big.rdf);
            if (!v.is_rdf) {
                err << "extended family fails verification: " << v.reason << "\n";
                return kNegative;
            }
            write_output(ext_out, render_family(rdf_file(big.rdf, carrier_spec(big.carrier), ForbiddenSpec{true, {}}, f.name)), out);
            err << "extended to DF(" << big.rdf.group.order() << "," << big.rdf.k << "," << big.rdf.lambda << ") with "
                << big.rdf.blocks.size() << " base blocks\n";
            return kOk;
        }

        if (*anom) {
            const FamilyFile f = load(anom_in);
            if (f.role != "rdf" && f.role != "design") throw InputError("anomaly needs a design or DF file");
            const Carrier carrier = resolve(f.carrier);
            const Design d = f.role == "rdf" ? develop(to_rdf(f).rdf) : to_design(f);
            const std::uint64_t p = anom_p ? anom_p : d.k();
            const auto v = anomaly_witness(d, p, anom_cap);
            out << v.summary;
            if (v.witness) {
                out << ": closure of blocks " << v.witness->first << " and " << v.witness->second << " has " << v.closure_size
                    << " points, expected " << p * p;
            }
            out << " (" << v.pairs_scanned << " pairs scanned)\n";
            nlohmann::ordered_json cert;
            cert["input"] = anom_in;
            cert["verdict"] = v.summary;
            cert["p"] = p;
            cert["pairs_scanned"] = v.pairs_scanned;
            if (v.witness) {
                auto block_json = [&](std::size_t i) {
                    nlohmann::ordered_json b = nlohmann::ordered_json::array();
                    for (auto x : d.block(i)) b.push_back(detail::element_to_json(carrier, Element{x}));
                    return b;
                };
                cert["witness"] = {{"blocks", {block_json(v.witness->first), block_json(v.witness->second)}},
                                   {"closure_size", v.closure_size}};
            } else {
                cert["witness"] = nullptr;
            }
            write_cert(anom_in, cert, ctx.cert, ctx.err);
            return v.anomalous ? kOk : kNegative;
        }

        if (*adm) return admissibility(adm_v, adm_k, ctx);

        if (*cat_list) {
            for (const auto& n : catalog_names()) out << n << "\n";
            return kOk;
        }
        if (*cat_emit) {
            if (cat_name == "exclusion-table") {
                write_output(cat_out, render_exclusion_table(), out);
                return kOk;
            }
            const auto f = catalog_family(cat_name);
            if (!f) throw InputError("unknown fixture " + cat_name + "; try catalog list");
            write_output(cat_out, render_family(*f), out);
            return kOk;
        }
    } catch (const SearchExhausted& e) {
        err << "search failed: " << e.what() << " (" << e.stats().nodes << " nodes, deepest level " << e.stats().deepest
            << ")\n";
        return kNegative;
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace srd::cli
