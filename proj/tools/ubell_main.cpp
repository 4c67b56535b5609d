// ubell: unsharp-measurement Bell toolkit CLI.
//
// Exit codes: 0 success, 1 validation/usage error, 2 the audit verdict is
// ImpliesSignalling (so shell pipelines can branch on it).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ubell/audit.hpp"
#include "ubell/bell.hpp"
#include "ubell/observables.hpp"
#include "ubell/states.hpp"

using json = nlohmann::ordered_json;
using namespace ubell;

namespace {

// ---------------------------------------------------------------- output --

// All floating-point output carries 12 significant digits.
double round12(double v) {
    if (v == 0.0) return 0.0;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

json jnum(double v) { return json(round12(v)); }

json jvec(const Vec3& v) { return json::array({jnum(v.x), jnum(v.y), jnum(v.z)}); }

json jmatrix(const SquareOp& m) {
    json rows = json::array();
    for (int i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.dim(); ++j)
            row.push_back(json::array({jnum(m.at(i, j).real()), jnum(m.at(i, j).imag())}));
        rows.push_back(row);
    }
    return rows;
}

void flatten(const json& node, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& out) {
    if (node.is_object()) {
        for (const auto& [key, value] : node.items())
            flatten(value, prefix.empty() ? key : prefix + "." + key, out);
    } else if (node.is_array()) {
        std::size_t i = 0;
        for (const auto& value : node)
            flatten(value, prefix + "[" + std::to_string(i++) + "]", out);
    } else {
        out.emplace_back(prefix, node.is_string() ? node.get<std::string>() : node.dump());
    }
}

int emit(const json& report, const std::string& format) {
    if (format == "json") {
        std::cout << report.dump(2) << "\n";
    } else if (format == "csv") {
        std::vector<std::pair<std::string, std::string>> rows;
        flatten(report, "", rows);
        std::cout << "key,value\n";
        for (const auto& [k, v] : rows) std::cout << k << "," << v << "\n";
    } else {  // text
        std::vector<std::pair<std::string, std::string>> rows;
        flatten(report, "", rows);
        for (const auto& [k, v] : rows) std::cout << k << ": " << v << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------- parsing --

Vec3 parse_direction(const std::string& s) {
    Vec3 v{};
    char c1 = 0, c2 = 0;
    std::istringstream in(s);
    if (!(in >> v.x >> c1 >> v.y >> c2 >> v.z) || c1 != ',' || c2 != ',')
        throw std::invalid_argument("direction must be three comma-separated numbers: " + s);
    return v.normalized();  // directions are normalized on input
}

std::array<double, 4> parse_correlations(const std::string& s) {
    std::array<double, 4> e{};
    char c = 0;
    std::istringstream in(s);
    if (!(in >> e[0] >> c >> e[1] >> c >> e[2] >> c >> e[3]))
        throw std::invalid_argument("correlations must be four comma-separated numbers: " + s);
    return e;
}

// "singlet", "mixed" or "werner:<p>"
TwoQubitState parse_state(const std::string& s) {
    if (s == "singlet") return singlet();
    if (s == "mixed") return maximally_mixed();
    if (s.rfind("werner:", 0) == 0) return werner(std::stod(s.substr(7)));
    throw std::invalid_argument("unknown state '" + s + "' (use singlet, mixed or werner:<p>)");
}

json read_document(const std::string& path) {
    if (path.empty() || path == "-") return json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input document: " + path);
    return json::parse(in);
}

void check_document_conventions(const json& doc) {
    if (doc.contains("outcomes")) {
        const auto o = doc["outcomes"];
        if (!(o.is_array() && o.size() == 2 && o[0] == 1 && o[1] == -1))
            throw std::invalid_argument("document outcomes must be [1, -1]");
    }
}

// Documents carry 12-significant-digit decimals, so exactly normalized
// tables arrive with O(1e-12) drift; rescale each block unless the drift is
// large enough to be a real error.
void renormalize_blocks(std::array<double, 16>& p, std::size_t block) {
    for (std::size_t start = 0; start < p.size(); start += block) {
        double s = 0.0;
        for (std::size_t i = 0; i < block; ++i) s += p[start + i];
        if (std::abs(s - 1.0) > 1e-9)
            throw std::invalid_argument("document probabilities do not normalize");
        for (std::size_t i = 0; i < block; ++i) p[start + i] /= s;
    }
}

// {"settings":{"x":2,"y":2},"outcomes":[1,-1],
//  "p":{"x,y":[[p(+,+),p(+,-)],[p(-,+),p(-,-)]], ...}}
BehaviorTable behavior_from_document(const json& doc) {
    check_document_conventions(doc);
    if (!doc.contains("p")) throw std::invalid_argument("behavior document needs a \"p\" object");
    std::array<double, 16> p{};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            const std::string key = std::to_string(x) + "," + std::to_string(y);
            if (!doc["p"].contains(key))
                throw std::invalid_argument("behavior document misses setting pair " + key);
            const auto& block = doc["p"][key];
            for (int ia = 0; ia < 2; ++ia)
                for (int ib = 0; ib < 2; ++ib)
                    p[BehaviorTable::index(x, y, ia, ib)] = block.at(static_cast<std::size_t>(ia))
                                                                .at(static_cast<std::size_t>(ib))
                                                                .get<double>();
        }
    renormalize_blocks(p, 4);
    return BehaviorTable(p);
}

// {"settings":{"y":2},"outcomes":[1,-1],
//  "q":{"y":[[[q(+,+,+),q(+,+,-)],[q(+,-,+),q(+,-,-)]],[[...],[...]]], ...}}
JointBehavior joint_behavior_from_document(const json& doc) {
    check_document_conventions(doc);
    if (!doc.contains("q")) throw std::invalid_argument("joint document needs a \"q\" object");
    std::array<double, 16> q{};
    for (int y = 0; y < 2; ++y) {
        const std::string key = std::to_string(y);
        if (!doc["q"].contains(key)) throw std::invalid_argument("joint document misses setting " + key);
        const auto& block = doc["q"][key];
        for (int ij = 0; ij < 2; ++ij)
            for (int ik = 0; ik < 2; ++ik)
                for (int ib = 0; ib < 2; ++ib)
                    q[JointBehavior::index(y, ij, ik, ib)] = block.at(static_cast<std::size_t>(ij))
                                                                 .at(static_cast<std::size_t>(ik))
                                                                 .at(static_cast<std::size_t>(ib))
                                                                 .get<double>();
    }
    renormalize_blocks(q, 8);
    return JointBehavior(q);
}

json joint_behavior_to_document(const JointBehavior& jb) {
    json doc;
    doc["settings"] = {{"y", 2}};
    doc["outcomes"] = {1, -1};
    json q = json::object();
    for (int y = 0; y < 2; ++y) {
        json block = json::array();
        for (int ij = 0; ij < 2; ++ij) {
            json mid = json::array();
            for (int ik = 0; ik < 2; ++ik) {
                json row = json::array();
                for (int ib = 0; ib < 2; ++ib) row.push_back(jnum(jb.q_by_index(y, ij, ik, ib)));
                mid.push_back(row);
            }
            block.push_back(mid);
        }
        q[std::to_string(y)] = block;
    }
    doc["q"] = q;
    return doc;
}

json correlations_json(double e_ab, double e_apb, double e_abp, double e_apbp) {
    return json{{"e_ab", jnum(e_ab)},
                {"e_apb", jnum(e_apb)},
                {"e_abp", jnum(e_abp)},
                {"e_apbp", jnum(e_apbp)}};
}

// ---------------------------------------------------------------- options --

struct CommonOpts {
    std::string format = "json";
    std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_seed) {
    cmd->add_option("--output", opts.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    if (with_seed) cmd->add_option("--seed", opts.seed, "64-bit RNG seed")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "ubell: unsharp spin observables, joint measurability, CHSH/Bell evaluation\n"
        "and no-signalling audits for two-qubit correlations.\n"
        "Exit codes: 0 success, 1 validation error, 2 audit verdict ImpliesSignalling."};
    app.require_subcommand(1);

    // coexist -------------------------------------------------------------
    auto* coexist_cmd = app.add_subcommand(
        "coexist", "check whether two unsharp spin observables are jointly measurable");
    struct {
        double lambda1 = 0, lambda2 = 0;
        std::string dir1, dir2;
        CommonOpts common;
    } coexist_args;
    coexist_cmd->add_option("--lambda1", coexist_args.lambda1, "first unsharpness")->required();
    coexist_cmd->add_option("--dir1", coexist_args.dir1, "first direction x,y,z")->required();
    coexist_cmd->add_option("--lambda2", coexist_args.lambda2, "second unsharpness")->required();
    coexist_cmd->add_option("--dir2", coexist_args.dir2, "second direction x,y,z")->required();
    add_common(coexist_cmd, coexist_args.common, false);

    // joint-povm ----------------------------------------------------------
    auto* jp_cmd = app.add_subcommand(
        "joint-povm", "construct the joint POVM of two coexistent unsharp spin observables");
    struct {
        double lambda1 = 0, lambda2 = 0;
        std::string dir1, dir2;
        CommonOpts common;
    } jp_args;
    jp_cmd->add_option("--lambda1", jp_args.lambda1, "first unsharpness")->required();
    jp_cmd->add_option("--dir1", jp_args.dir1, "first direction x,y,z")->required();
    jp_cmd->add_option("--lambda2", jp_args.lambda2, "second unsharpness")->required();
    jp_cmd->add_option("--dir2", jp_args.dir2, "second direction x,y,z")->required();
    add_common(jp_cmd, jp_args.common, false);

    // chsh ------------------------------------------------------------------
    auto* chsh_cmd = app.add_subcommand(
        "chsh", "evaluate the CHSH combination |E(A,B)+E(A',B)| + |E(A,B')-E(A',B')|");
    struct {
        std::string correlations;
        std::string state;
        std::string a, ap, b, bp;
        double lambda = 1.0;
        CommonOpts common;
    } chsh_args;
    chsh_cmd->add_option("--correlations", chsh_args.correlations,
                         "four comma-separated correlations e_ab,e_apb,e_abp,e_apbp");
    chsh_cmd->add_option("--state", chsh_args.state, "singlet | mixed | werner:<p>");
    chsh_cmd->add_option("--a", chsh_args.a, "Alice first direction x,y,z");
    chsh_cmd->add_option("--aprime", chsh_args.ap, "Alice second direction x,y,z");
    chsh_cmd->add_option("--b", chsh_args.b, "Bob first direction x,y,z");
    chsh_cmd->add_option("--bprime", chsh_args.bp, "Bob second direction x,y,z");
    chsh_cmd->add_option("--lambda", chsh_args.lambda, "Alice unsharpness (state mode)")
        ->capture_default_str();
    add_common(chsh_cmd, chsh_args.common, false);

    // optimize --------------------------------------------------------------
    auto* opt_cmd =
        app.add_subcommand("optimize", "maximize the sharp CHSH value over measurement directions");
    struct {
        std::string state = "singlet";
        int starts = 16;
        CommonOpts common;
    } opt_args;
    opt_cmd->add_option("--state", opt_args.state, "singlet | mixed | werner:<p>")
        ->capture_default_str();
    opt_cmd->add_option("--starts", opt_args.starts, "number of optimizer starts")
        ->capture_default_str();
    add_common(opt_cmd, opt_args.common, true);

    // chain -------------------------------------------------------------------
    auto* chain_cmd = app.add_subcommand(
        "chain",
        "verify the joint-measurement inequality chain on a joint behavior "
        "(from --input/stdin, or generated from a state)");
    struct {
        std::string input;
        std::string state;
        double lambda = 0;
        std::string dir1, dir2, bob, bobprime;
        bool echo = false;
        CommonOpts common;
    } chain_args;
    chain_cmd->add_option("--input", chain_args.input,
                          "joint-behavior JSON document ('-' = stdin)");
    chain_cmd->add_option("--state", chain_args.state, "singlet | mixed | werner:<p>");
    chain_cmd->add_option("--lambda", chain_args.lambda, "shared unsharpness of Alice's pair");
    chain_cmd->add_option("--dir1", chain_args.dir1, "Alice first direction x,y,z");
    chain_cmd->add_option("--dir2", chain_args.dir2, "Alice second direction x,y,z");
    chain_cmd->add_option("--bob", chain_args.bob, "Bob first direction x,y,z");
    chain_cmd->add_option("--bobprime", chain_args.bobprime, "Bob second direction x,y,z");
    chain_cmd->add_flag("--echo-document", chain_args.echo,
                        "include the joint-behavior document in the report");
    add_common(chain_cmd, chain_args.common, false);

    // audit -------------------------------------------------------------------
    auto* audit_cmd = app.add_subcommand(
        "audit", "causality audit: joint measurability gate plus the Bell bound");
    struct {
        std::string correlations;
        std::string input;
        bool use_pr_box = false;
        double lambda = 0;
        std::string dir1, dir2;
        CommonOpts common;
    } audit_args;
    audit_cmd->add_option("--correlations", audit_args.correlations,
                          "four comma-separated correlations");
    audit_cmd->add_option("--input", audit_args.input,
                          "behavior-table JSON document ('-' = stdin)");
    audit_cmd->add_flag("--pr-box", audit_args.use_pr_box, "audit the PR box");
    audit_cmd->add_option("--lambda", audit_args.lambda, "shared unsharpness")->required();
    audit_cmd->add_option("--dir1", audit_args.dir1, "Alice first direction x,y,z")->required();
    audit_cmd->add_option("--dir2", audit_args.dir2, "Alice second direction x,y,z")->required();
    add_common(audit_cmd, audit_args.common, false);

    // simulate -------------------------------------------------------------------
    auto* sim_cmd = app.add_subcommand(
        "simulate", "sample measurement outcomes from the exact joint distribution");
    struct {
        std::string state = "singlet";
        std::string alice_dir, bob_dir;
        double alice_lambda = 1.0, bob_lambda = 1.0;
        std::uint64_t n = 0;
        CommonOpts common;
    } sim_args;
    sim_cmd->add_option("--state", sim_args.state, "singlet | mixed | werner:<p>")
        ->capture_default_str();
    sim_cmd->add_option("--alice-dir", sim_args.alice_dir, "Alice direction x,y,z")->required();
    sim_cmd->add_option("--alice-lambda", sim_args.alice_lambda, "Alice unsharpness")
        ->capture_default_str();
    sim_cmd->add_option("--bob-dir", sim_args.bob_dir, "Bob direction x,y,z")->required();
    sim_cmd->add_option("--bob-lambda", sim_args.bob_lambda, "Bob unsharpness")
        ->capture_default_str();
    sim_cmd->add_option("--n", sim_args.n, "number of samples")->required();
    add_common(sim_cmd, sim_args.common, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (coexist_cmd->parsed()) {
            const UnsharpSpin u1(coexist_args.lambda1, parse_direction(coexist_args.dir1));
            const UnsharpSpin u2(coexist_args.lambda2, parse_direction(coexist_args.dir2));
            const auto r = coexistence_check(u1, u2);
            json report;
            report["command"] = "coexist";
            report["coexistent"] = r.coexistent;
            report["lhs"] = jnum(r.lhs);
            report["lambda_max_equal"] = jnum(max_equal_lambda(u1.direction, u2.direction));
            return emit(report, coexist_args.common.format);
        }

        if (jp_cmd->parsed()) {
            const UnsharpSpin u1(jp_args.lambda1, parse_direction(jp_args.dir1));
            const UnsharpSpin u2(jp_args.lambda2, parse_direction(jp_args.dir2));
            const auto joint = build_joint_povm(u1, u2);

            double min_eig = 1.0;
            double marginal_residual = 0.0;
            for (int s : {1, -1}) {
                const auto m1 = joint.effect(s, 1) + joint.effect(s, -1);
                const auto e1 =
                    unsharp_effect(UnsharpSpin(u1.lam, s == 1 ? u1.direction : -u1.direction), 1);
                marginal_residual = std::max(marginal_residual, m1.op().max_abs_diff(e1.op()));
                const auto m2 = joint.effect(1, s) + joint.effect(-1, s);
                const auto e2 =
                    unsharp_effect(UnsharpSpin(u2.lam, s == 1 ? u2.direction : -u2.direction), 1);
                marginal_residual = std::max(marginal_residual, m2.op().max_abs_diff(e2.op()));
            }
            json effects;
            const char* labels[4] = {"++", "+-", "-+", "--"};
            const int signs[4][2] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
            for (int i = 0; i < 4; ++i) {
                const auto& g = joint.effect(signs[i][0], signs[i][1]);
                effects[labels[i]] = jmatrix(g.op());
                min_eig = std::min(min_eig, min_eigenvalue(g));
            }

            json report;
            report["command"] = "joint-povm";
            report["lambda1"] = jnum(joint.lam1());
            report["dir1"] = jvec(joint.dir1());
            report["lambda2"] = jnum(joint.lam2());
            report["dir2"] = jvec(joint.dir2());
            report["gamma"] = jnum(joint.gamma());
            report["effects"] = effects;
            report["min_eigenvalue"] = jnum(min_eig);
            report["marginal_residual"] = jnum(marginal_residual);
            return emit(report, jp_args.common.format);
        }

        if (chsh_cmd->parsed()) {
            json report;
            report["command"] = "chsh";
            if (!chsh_args.correlations.empty()) {
                const auto e = parse_correlations(chsh_args.correlations);
                const auto r = chsh_from_correlations(e[0], e[1], e[2], e[3]);
                report["mode"] = "correlations";
                report["correlations"] = correlations_json(r.e_ab, r.e_apb, r.e_abp, r.e_apbp);
                report["value"] = jnum(r.value);
            } else {
                if (chsh_args.state.empty() || chsh_args.a.empty() || chsh_args.ap.empty() ||
                    chsh_args.b.empty() || chsh_args.bp.empty())
                    throw std::invalid_argument(
                        "chsh needs --correlations, or --state with --a --aprime --b --bprime");
                const auto rho = parse_state(chsh_args.state);
                const ChshSetting setting(parse_direction(chsh_args.a), parse_direction(chsh_args.ap),
                                          parse_direction(chsh_args.b), parse_direction(chsh_args.bp));
                const auto r = chsh_quantum(rho, setting, chsh_args.lambda);
                report["mode"] = "state";
                report["state"] = chsh_args.state;
                report["lambda"] = jnum(chsh_args.lambda);
                report["setting"] = {{"a", jvec(setting.a)},
                                     {"a_prime", jvec(setting.a_prime)},
                                     {"b", jvec(setting.b)},
                                     {"b_prime", jvec(setting.b_prime)}};
                report["correlations"] = correlations_json(r.e_ab, r.e_apb, r.e_abp, r.e_apbp);
                report["value"] = jnum(r.value);
            }
            return emit(report, chsh_args.common.format);
        }

        if (opt_cmd->parsed()) {
            const auto rho = parse_state(opt_args.state);
            const auto res = tsirelson_optimize(rho, opt_args.common.seed, opt_args.starts);
            json report;
            report["command"] = "optimize";
            report["state"] = opt_args.state;
            report["seed"] = opt_args.common.seed;
            report["starts"] = opt_args.starts;
            report["converged_starts"] = res.converged_starts;
            report["value"] = jnum(res.best.value);
            report["oracle"] = jnum(horodecki_oracle(rho));
            report["setting"] = {{"a", jvec(res.setting.a)},
                                 {"a_prime", jvec(res.setting.a_prime)},
                                 {"b", jvec(res.setting.b)},
                                 {"b_prime", jvec(res.setting.b_prime)}};
            report["correlations"] =
                correlations_json(res.best.e_ab, res.best.e_apb, res.best.e_abp, res.best.e_apbp);
            return emit(report, opt_args.common.format);
        }

        if (chain_cmd->parsed()) {
            ChainReport chain{};
            json document;
            if (!chain_args.state.empty()) {
                if (chain_args.lambda <= 0 || chain_args.dir1.empty() || chain_args.dir2.empty() ||
                    chain_args.bob.empty() || chain_args.bobprime.empty())
                    throw std::invalid_argument(
                        "chain generation needs --state --lambda --dir1 --dir2 --bob --bobprime");
                const auto rho = parse_state(chain_args.state);
                const UnsharpSpin u1(chain_args.lambda, parse_direction(chain_args.dir1));
                const UnsharpSpin u2(chain_args.lambda, parse_direction(chain_args.dir2));
                const auto joint = build_joint_povm(u1, u2);
                const auto jb = joint_behavior_from_state(
                    rho, joint,
                    {SharpSpin(parse_direction(chain_args.bob)),
                     SharpSpin(parse_direction(chain_args.bobprime))});
                chain = verify_derivation_chain(jb);
                if (chain_args.echo) document = joint_behavior_to_document(jb);
            } else {
                document = read_document(chain_args.input);
                chain = verify_derivation_chain(joint_behavior_from_document(document));
            }

            json per_setting = json::array();
            for (int y = 0; y < 2; ++y) {
                const auto yy = static_cast<std::size_t>(y);
                per_setting.push_back({{"y", y},
                                       {"p_same", jnum(chain.p_same[yy])},
                                       {"p_diff", jnum(chain.p_diff[yy])},
                                       {"p_all_equal", jnum(chain.p_all_equal[yy])},
                                       {"p_pair_anti", jnum(chain.p_pair_anti[yy])},
                                       {"e_a", jnum(chain.e_a[yy])},
                                       {"e_ap", jnum(chain.e_ap[yy])}});
            }
            json report;
            report["command"] = "chain";
            report["per_setting"] = per_setting;
            report["steps"] = {{"decomposition", chain.decomposition_ok},
                               {"nonnegativity", chain.nonnegativity_ok},
                               {"correlation_identity", chain.identity_ok},
                               {"bound_first_setting", chain.bound_b_ok},
                               {"bound_second_setting", chain.bound_bp_ok},
                               {"combined_bound", chain.combined_ok},
                               {"no_signalling", chain.no_signalling_ok},
                               {"normalization", chain.normalization_ok},
                               {"final_bound", chain.bound_final_ok}};
            report["no_signalling_gap"] = jnum(chain.no_signalling_gap);
            report["lhs"] = jnum(chain.lhs);
            report["all_passed"] = chain.all_passed();
            if (chain_args.echo) report["document"] = document;
            return emit(report, chain_args.common.format);
        }

        if (audit_cmd->parsed()) {
            const Vec3 a1 = parse_direction(audit_args.dir1);
            const Vec3 a2 = parse_direction(audit_args.dir2);
            AuditVerdict verdict{VerdictKind::Consistent, 0, 0, ""};
            json source;
            if (!audit_args.correlations.empty()) {
                const auto e = parse_correlations(audit_args.correlations);
                verdict = causality_audit(e[0], e[1], e[2], e[3], audit_args.lambda, a1, a2);
                source = correlations_json(e[0], e[1], e[2], e[3]);
            } else {
                const BehaviorTable t = audit_args.use_pr_box
                                            ? pr_box()
                                            : behavior_from_document(read_document(audit_args.input));
                verdict = audit_behavior(t, audit_args.lambda, a1, a2);
                source = correlations_json(t.correlation(0, 0), t.correlation(1, 0),
                                           t.correlation(0, 1), t.correlation(1, 1));
            }
            json report;
            report["command"] = "audit";
            report["verdict"] = to_string(verdict.kind);
            report["lambda"] = jnum(audit_args.lambda);
            report["lambda_max"] = jnum(verdict.lambda_max);
            report["lhs_bell"] = jnum(verdict.lhs_bell);
            report["correlations"] = source;
            report["details"] = verdict.details;
            emit(report, audit_args.common.format);
            return verdict.kind == VerdictKind::ImpliesSignalling ? 2 : 0;
        }

        if (sim_cmd->parsed()) {
            const auto rho = parse_state(sim_args.state);
            const UnsharpSpin ua(sim_args.alice_lambda, parse_direction(sim_args.alice_dir));
            const UnsharpSpin ub(sim_args.bob_lambda, parse_direction(sim_args.bob_dir));
            const Povm alice({unsharp_effect(ua, 1), unsharp_effect(ua, -1)});
            const Povm bob({unsharp_effect(ub, 1), unsharp_effect(ub, -1)});
            const auto counts = sample_outcomes(rho, alice, bob, sim_args.n, sim_args.common.seed);

            // exact E for the same pair of dichotomic measurements
            double exact = 0.0;
            for (int ia = 0; ia < 2; ++ia)
                for (int ib = 0; ib < 2; ++ib)
                    exact += (ia == ib ? 1.0 : -1.0) *
                             expectation(rho, alice.effect(static_cast<std::size_t>(ia)),
                                         bob.effect(static_cast<std::size_t>(ib)));

            json rows = json::array();
            for (const auto& row : counts.counts) {
                json r = json::array();
                for (auto c : row) r.push_back(c);
                rows.push_back(r);
            }
            json report;
            report["command"] = "simulate";
            report["state"] = sim_args.state;
            report["n"] = sim_args.n;
            report["seed"] = sim_args.common.seed;
            report["alice"] = {{"lambda", jnum(ua.lam)}, {"dir", jvec(ua.direction)}};
            report["bob"] = {{"lambda", jnum(ub.lam)}, {"dir", jvec(ub.direction)}};
            report["counts"] = rows;
            report["empirical_correlation"] = jnum(counts.empirical_correlation());
            report["exact_correlation"] = jnum(exact);
            return emit(report, sim_args.common.format);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
