#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "acceptance.hpp"
#include "parallel.hpp"
#include "serialize.hpp"
#include "version.hpp"

namespace hhlab {
namespace cli {

inline ojson envelope(const std::string& command, ojson params, ojson result,
                      std::vector<std::string> refs)
{
    ojson j;
    j["command"] = command;
    j["params"] = std::move(params);
    j["result"] = std::move(result);
    j["paper_refs"] = refs;
    j["version"] = kVersion;
    return j;
}

inline void emit(std::ostream& out, const ojson& j) { out << j.dump(2) << "\n"; }

// Runs the command line given by args (without the program name), writing
// reports to `out` and diagnostics to `err`.  Exit codes: 0 success, 1 a
// mathematical check failed (selfcheck, or --expect contradicted), 2 invalid
// usage.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"exact Hochschild (co)homology of polynomial algebras and projective space"};
    app.name("hhlab");
    app.require_subcommand(1);

    int n = 1, q = 0, deg = 0, qmax = 3, degmax = 4, workers = 1;
    int lb_deg = 0, wedge_q = 0, omega_p = 0, twist_k = 0;
    uint64_t chr = 0, seed = 20260823;
    std::string format = "text", space = "affine", expect;

    auto add_common = [&](CLI::App* sub, bool with_char = true) {
        sub->add_option("--n", n, "number of variables / projective dimension")
            ->required();
        if (with_char)
            sub->add_option("--char", chr,
                            "field characteristic: 0 for QQ (default), a prime p for GF(p)");
        sub->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"text", "json"}));
    };

    auto* chain = app.add_subcommand(
        "chain-homology",
        "rank of the degree-d graded piece of Hochschild homology HH_q, by exact elimination");
    add_common(chain);
    chain->add_option("--q", q, "homological degree")->required();
    chain->add_option("--deg", deg, "internal (polynomial) degree")->required();

    auto* hkr = app.add_subcommand(
        "hkr-check",
        "Hochschild-Kostant-Rosenberg comparison: the scaling pi(eps) = q! and the rank of "
        "the map induced by pi on a graded homology piece");
    add_common(hkr);
    hkr->add_option("--q", q, "homological degree (q <= n, q! invertible)")->required();
    hkr->add_option("--deg", deg, "internal degree for the induced-rank check")->required();

    auto* ext = app.add_subcommand(
        "ext", "rank of Ext^q over the enveloping algebra, via the Koszul resolution");
    add_common(ext);
    ext->add_option("--q", q, "cohomological degree")->required();

    auto* cochain = app.add_subcommand(
        "cochain", "cohomology rank of the graded-dual Hochschild cochain complex");
    add_common(cochain);
    cochain->add_option("--q", q, "cohomological degree")->required();
    cochain->add_option("--deg", deg, "internal (polynomial) degree")->required();

    auto* cech = app.add_subcommand(
        "cech",
        "sheaf cohomology on P^n via multidegree Cech complexes and the Euler resolution");
    add_common(cech);
    auto* opt_lb = cech->add_option("--deg", lb_deg, "line bundle O(d)");
    auto* opt_wt = cech->add_option("--wedge", wedge_q, "wedge power of the tangent sheaf");
    auto* opt_om = cech->add_option("--omega", omega_p, "twisted form sheaf Omega^p(k)");
    auto* opt_tw = cech->add_option("--twist", twist_k, "twist k for --omega (default 0)");
    opt_lb->excludes(opt_wt)->excludes(opt_om);
    opt_wt->excludes(opt_om);
    opt_tw->needs(opt_om);
    cech->add_option("--workers", workers, "worker threads (HHLAB_WORKERS overrides)");

    auto* hh = app.add_subcommand(
        "hh", "assembled Hochschild cohomology of affine space or projective space");
    add_common(hh);
    hh->add_option("--space", space, "affine or pn")
        ->required()
        ->check(CLI::IsMember({"affine", "pn"}));
    hh->add_option("--workers", workers, "worker threads (HHLAB_WORKERS overrides)");

    auto* cc = app.add_subcommand(
        "char-check",
        "bounded scan of the quasi-isomorphism criterion for pi in a given characteristic");
    add_common(cc);
    cc->add_option("--qmax", qmax, "largest homological degree scanned")->required();
    cc->add_option("--degmax", degmax, "largest internal degree scanned")->required();
    cc->add_option("--expect", expect, "assert the verdict; mismatch exits 1")
        ->check(CLI::IsMember({"holds", "fails"}));
    cc->add_option("--workers", workers, "worker threads (HHLAB_WORKERS overrides)");

    auto* self = app.add_subcommand("selfcheck", "run the full acceptance suite");
    self->add_option("--seed", seed, "seed for the randomized property suites");
    self->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    const bool json = format == "json";
    try {
        FieldSpec fs = chr == 0 ? FieldSpec::rationals() : FieldSpec::prime(chr);

        if (chain->parsed()) {
            uint64_t r = with_field(
                fs, [&](auto field) { return chain_homology_rank(field, n, q, deg); });
            if (json) {
                ojson params{{"n", n}, {"char", chr}, {"q", q}, {"deg", deg}};
                emit(out, envelope("chain-homology", params, ojson{{"rank", r}},
                                   {"Hochschild homology of polynomial algebras",
                                    "Hochschild-Kostant-Rosenberg theorem"}));
            } else {
                out << "rank " << r << "\n";
            }
            return 0;
        }

        if (hkr->parsed()) {
            return with_field(fs, [&](auto field) {
                auto factor = hkr_scaling_check(field, n, q);
                auto fact = field.one();
                for (int i = 2; i <= q; ++i) fact = field.mul(fact, field.from_int(i));
                bool scaling_ok = field.eq(factor, fact);
                uint64_t h = chain_homology_rank(field, n, q, deg);
                uint64_t ir = pi_induced_rank(field, n, q, deg);
                if (json) {
                    ojson params{{"n", n}, {"char", chr}, {"q", q}, {"deg", deg}};
                    ojson result;
                    result["scaling_factor"] = field.to_string(factor);
                    result["q_factorial"] = field.to_string(fact);
                    result["scaling_ok"] = scaling_ok;
                    result["homology_rank"] = h;
                    result["induced_rank"] = ir;
                    result["full_rank"] = ir == h;
                    emit(out, envelope("hkr-check", params, result,
                                       {"Hochschild-Kostant-Rosenberg theorem",
                                        "antisymmetrization map"}));
                } else {
                    out << "scaling factor " << field.to_string(factor) << " (q! = "
                        << field.to_string(fact) << ")\n";
                    out << "induced map on H_" << q << " at degree " << deg << ": rank " << ir
                        << " of " << h << (ir == h ? " (full)" : " (deficient)") << "\n";
                }
                return scaling_ok && ir == h ? 0 : 1;
            });
        }

        if (ext->parsed()) {
            uint64_t r = with_field(fs, [&](auto field) { return koszul_ext(field, n, q); });
            if (json) {
                ojson params{{"n", n}, {"char", chr}, {"q", q}};
                emit(out, envelope("ext", params, ojson{{"rank", r}},
                                   {"Koszul resolution", "Ext over the enveloping algebra"}));
            } else {
                out << "rank " << r << "\n";
            }
            return 0;
        }

        if (cochain->parsed()) {
            uint64_t r = with_field(
                fs, [&](auto field) { return cochain_cohomology_rank(field, n, q, deg); });
            if (json) {
                ojson params{{"n", n}, {"char", chr}, {"q", q}, {"deg", deg}};
                emit(out, envelope("cochain", params, ojson{{"rank", r}},
                                   {"Hochschild cochain complex", "graded duality"}));
            } else {
                out << "rank " << r << "\n";
            }
            return 0;
        }

        if (cech->parsed()) {
            SheafSpec sheaf = *opt_lb   ? SheafSpec::line_bundle(n, lb_deg)
                              : *opt_wt ? SheafSpec::wedge_tangent(n, wedge_q)
                              : *opt_om ? SheafSpec::omega_twist(n, omega_p, twist_k)
                                        : throw InvalidSpec(
                                              "cech needs one of --deg, --wedge, --omega");
            int w = resolve_workers(workers);
            CechDetails det;
            auto h = with_field(
                fs, [&](auto field) { return sheaf_cohomology(field, sheaf, &det, w); });
            if (json) {
                ojson params{{"n", n}, {"char", chr}, {"sheaf", sheaf.to_string()}};
                ojson result = to_json(sheaf);
                result["h"] = h;
                result["details"] = to_json(det);
                emit(out, envelope("cech", params, result,
                                   {"Cech cohomology of projective space", "Euler sequence"}));
            } else {
                out << sheaf.to_string() << " on P^" << n << "\n";
                for (size_t m = 0; m < h.size(); ++m) out << "h^" << m << " = " << h[m] << "\n";
                out << "multidegrees " << det.multidegrees << ", shell checked "
                    << det.shell_checked << ", min component bound " << det.min_component_bound
                    << "\n";
            }
            return 0;
        }

        if (hh->parsed()) {
            int w = resolve_workers(workers);
            DecompositionReport rep = with_field(fs, [&](auto field) {
                return space == "affine" ? hh_affine(field, n) : hh_projective(field, n, w);
            });
            if (json) {
                ojson params{{"space", space}, {"n", n}, {"char", chr}};
                emit(out, envelope("hh", params, to_json(rep),
                                   {"Hochschild cohomology decomposition",
                                    "wedge powers of the tangent sheaf"}));
            } else {
                out << "HH^*(" << (rep.space == Space::Affine ? "A^" : "P^") << n << ") over "
                    << rep.field.to_string() << "\n";
                out << "validity: " << (rep.validity ? "true" : "false") << "\n";
                if (rep.validity) {
                    for (size_t i = 0; i < rep.hh.size(); ++i)
                        out << "HH^" << i << " = " << rep.hh[i] << "\n";
                } else {
                    out << "no decomposition formula applies in this characteristic; "
                           "summands (rows i, columns q):\n";
                }
                for (size_t i = 0; i < rep.summands.size(); ++i) {
                    out << "summands[" << i << "]:";
                    for (uint64_t v : rep.summands[i]) out << " " << v;
                    out << "\n";
                }
            }
            return 0;
        }

        if (cc->parsed()) {
            int w = resolve_workers(workers);
            auto res = characteristic_criterion(n, chr, qmax, degmax, w);
            if (json) {
                ojson params{{"n", n}, {"char", chr}, {"qmax", qmax}, {"degmax", degmax}};
                emit(out, envelope("char-check", params, to_json(res),
                                   {"quasi-isomorphism criterion in positive characteristic"}));
            } else {
                if (res.holds) {
                    out << "verdict: holds up to (q<=" << qmax << ", d<=" << degmax << ")\n";
                } else {
                    out << "verdict: fails (bounds q<=" << qmax << ", d<=" << degmax << ")\n";
                    out << "witness: q=" << res.witness->q << " d=" << res.witness->d
                        << " homology rank " << res.witness->homology_rank << " induced rank "
                        << res.witness->induced_rank << "\n";
                }
            }
            if (!expect.empty() && (expect == "holds") != res.holds) {
                err << "expectation '" << expect << "' contradicted by the scan\n";
                return 1;
            }
            return 0;
        }

        if (self->parsed()) {
            auto results = run_acceptance(seed);
            bool all = true;
            for (const auto& c : results) all = all && c.pass;
            if (json) {
                ojson params{{"seed", seed}};
                ojson arr = ojson::array();
                for (const auto& c : results) {
                    ojson j;
                    j["id"] = c.id;
                    j["name"] = c.name;
                    j["pass"] = c.pass;
                    j["detail"] = c.detail;
                    arr.push_back(j);
                }
                ojson result;
                result["criteria"] = arr;
                result["all_pass"] = all;
                emit(out, envelope("selfcheck", params, result, {"acceptance criteria"}));
            } else {
                for (const auto& c : results)
                    out << "[" << (c.pass ? "PASS" : "FAIL") << "] criterion " << c.id << ": "
                        << c.name << " -- " << c.detail << "\n";
                out << (all ? "all criteria passed" : "failures present") << "\n";
            }
            return all ? 0 : 1;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal check failed: " << e.what() << "\n";
        return 1;
    }
    err << "no subcommand executed\n";
    return 2;
}

} // namespace cli
} // namespace hhlab
