#include "rootdatum_cmd.hpp"

#include <sstream>

#include "cli_support.hpp"

namespace perfrd::cli {

namespace {

const char* kGrammar =
    "usage: rootdatum <validate|iso|isogeny|dual|weyl|builtin> [flags]\n"
    "\n"
    "common flags\n"
    "  -p <prime>             context prime (required for builtin: inputs;\n"
    "                         must match the prime stored in file: inputs)\n"
    "  --format json|table    output rendering (default json)\n"
    "  -o <file>              write output to a file instead of stdout\n"
    "  --a, --b <input>       root datum input: file:<path> or builtin:<name>\n"
    "\n"
    "subcommands\n"
    "  validate --a <input>                 check the axioms, report item by item\n"
    "  iso      --a <input> --b <input>     decide isomorphism over Z[1/p]\n"
    "           [--coeff-bound N] [--exp-bound N] [--node-budget N]\n"
    "  isogeny  --a <input> --b <input> --phi <json|file:path>\n"
    "                                       check a given matrix for the isogeny\n"
    "                                       conditions\n"
    "  dual     --a <input>                 emit the dual root datum\n"
    "  weyl     --a <input> [--cap N]       Weyl group order and classification\n"
    "  builtin  [--name <name>]             emit a builtin datum (requires -p),\n"
    "                                       or list all builtin names\n"
    "\n"
    "exit codes: 0 definite answer, 2 Unknown verdict, 1 error, 64 usage\n";

struct CommonFlags {
    std::optional<long> p;
    std::string format = "json";
    std::string out_path;
};

void add_common(CLI::App* cmd, CommonFlags* common) {
    cmd->add_option("-p", common->p, "context prime");
    cmd->add_option("--format", common->format, "output format")
        ->check(CLI::IsMember({"json", "table"}));
    cmd->add_option("-o", common->out_path, "output file");
}

std::string datum_table(const RootDatum& rd) {
    std::ostringstream s;
    if (!rd.name().empty()) s << "name: " << rd.name() << "\n";
    s << "p: " << rd.p() << "\n";
    s << "rank_X: " << rd.rank_x() << "\n";
    s << "rank_Y: " << rd.rank_y() << "\n";
    s << "roots: " << rd.root_count() << " (" << rd.positive_count() << " positive)\n";
    return s.str();
}

std::string validation_table(const ValidationReport& report) {
    std::ostringstream s;
    s << "ok: " << yes_no(report.ok) << "\n";
    for (const auto& item : report.items) {
        s << (item.pass ? "pass" : "FAIL") << "  " << item.axiom;
        if (!item.offenders.empty()) {
            s << "  offenders:";
            for (int i : item.offenders) s << " " << i;
        }
        if (!item.detail.empty()) s << "  (" << item.detail << ")";
        s << "\n";
    }
    return s.str();
}

std::string verdict_table(const IsoVerdict& verdict) {
    std::ostringstream s;
    s << "status: " << to_string(verdict.status) << "\n";
    if (verdict.witness) s << "witness:\n" << matrix_lines(*verdict.witness);
    if (verdict.certificate)
        s << "certificate: " << verdict.certificate->invariant
          << "  lhs=" << verdict.certificate->lhs << "  rhs=" << verdict.certificate->rhs
          << "\n";
    s << "budget: nodes=" << verdict.budget_spent.nodes
      << " exhausted=" << yes_no(verdict.budget_spent.exhausted) << "\n";
    return s.str();
}

std::string isogeny_table(const IsogenyCheck& check) {
    std::ostringstream s;
    s << "ok: " << yes_no(check.ok) << "\n";
    for (const auto& r : check.reasons) s << "reason: " << r << "\n";
    if (check.witness) {
        s << "phi:\n" << matrix_lines(check.witness->phi);
        s << "root_bijection:";
        for (int i : check.witness->root_bijection) s << " " << i;
        s << "\n";
        s << "steinberg_shift: " << check.witness->steinberg_shift << "\n";
    }
    return s.str();
}

std::string weyl_table(const WeylGroup& w) {
    std::ostringstream s;
    s << "order: " << w.order << "\n";
    s << "cartan_type: " << (w.cartan_type.empty() ? "(unclassified)" : w.cartan_type) << "\n";
    s << "element_count: " << w.elements.size() << "\n";
    if (w.longest) {
        s << "longest:";
        for (int i : *w.longest) s << " " << i;
        s << "\n";
    }
    return s.str();
}

// --phi accepts file:<path> or the JSON matrix text itself.
MatQ resolve_phi(const std::string& spec, long p) {
    std::string text = spec;
    if (has_prefix(spec, "file:")) {
        std::ifstream in(spec.substr(5));
        if (!in) fail(Errc::IoError, "cannot read " + spec.substr(5));
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    Json j = Json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) fail(Errc::ParseError, "--phi is not valid JSON");
    return matq_from_json(j, p);
}

} // namespace

int run_rootdatum(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    return run_command(
        [&]() -> int {
            CLI::App app{"root data over Z[1/p]"};
            app.require_subcommand(1);

            CommonFlags common;
            std::string a_spec, b_spec, phi_spec, name;
            SearchBudget budget;
            long cap = 1000000;

            CLI::App* validate_cmd = app.add_subcommand("validate");
            add_common(validate_cmd, &common);
            validate_cmd->add_option("--a", a_spec)->required();

            CLI::App* iso_cmd = app.add_subcommand("iso");
            add_common(iso_cmd, &common);
            iso_cmd->add_option("--a", a_spec)->required();
            iso_cmd->add_option("--b", b_spec)->required();
            iso_cmd->add_option("--coeff-bound", budget.coeff_bound);
            iso_cmd->add_option("--exp-bound", budget.exp_bound);
            iso_cmd->add_option("--node-budget", budget.node_budget);

            CLI::App* isogeny_cmd = app.add_subcommand("isogeny");
            add_common(isogeny_cmd, &common);
            isogeny_cmd->add_option("--a", a_spec)->required();
            isogeny_cmd->add_option("--b", b_spec)->required();
            isogeny_cmd->add_option("--phi", phi_spec)->required();

            CLI::App* dual_cmd = app.add_subcommand("dual");
            add_common(dual_cmd, &common);
            dual_cmd->add_option("--a", a_spec)->required();

            CLI::App* weyl_cmd = app.add_subcommand("weyl");
            add_common(weyl_cmd, &common);
            weyl_cmd->add_option("--a", a_spec)->required();
            weyl_cmd->add_option("--cap", cap);

            CLI::App* builtin_cmd = app.add_subcommand("builtin");
            add_common(builtin_cmd, &common);
            builtin_cmd->add_option("--name", name);

            std::vector<std::string> rev(args.rbegin(), args.rend());
            app.parse(rev);
            const bool table = common.format == "table";

            if (validate_cmd->parsed()) {
                RootDatum rd = resolve_datum(a_spec, common.p, "--a");
                ValidationReport report = validate(rd);
                emit(table ? validation_table(report) : json_text(to_json(report)),
                     common.out_path, out);
                return kExitOk;
            }
            if (iso_cmd->parsed()) {
                RootDatum a = resolve_datum(a_spec, common.p, "--a");
                RootDatum b = resolve_datum(b_spec, common.p, "--b");
                IsoVerdict verdict = decide_isomorphism(a, b, budget);
                emit(table ? verdict_table(verdict) : json_text(to_json(verdict)),
                     common.out_path, out);
                return verdict.status == IsoStatus::Unknown ? kExitUnknown : kExitOk;
            }
            if (isogeny_cmd->parsed()) {
                RootDatum a = resolve_datum(a_spec, common.p, "--a");
                RootDatum b = resolve_datum(b_spec, common.p, "--b");
                MatQ phi = resolve_phi(phi_spec, a.p());
                IsogenyCheck check = check_isogeny(a, b, phi);
                emit(table ? isogeny_table(check) : json_text(to_json(check)),
                     common.out_path, out);
                return kExitOk;
            }
            if (dual_cmd->parsed()) {
                RootDatum rd = dual(resolve_datum(a_spec, common.p, "--a"));
                emit(table ? datum_table(rd) : json_text(to_json(rd)), common.out_path, out);
                return kExitOk;
            }
            if (weyl_cmd->parsed()) {
                RootDatum rd = resolve_datum(a_spec, common.p, "--a");
                WeylGroup w = weyl_group(rd, cap);
                emit(table ? weyl_table(w) : json_text(to_json(w)), common.out_path, out);
                return kExitOk;
            }
            // builtin
            if (!name.empty()) {
                if (!common.p) throw UsageError{"builtin requires -p"};
                RootDatum rd = builtin(name, *common.p);
                emit(table ? datum_table(rd) : json_text(to_json(rd)), common.out_path, out);
            } else {
                std::string text;
                if (table) {
                    for (const auto& n : builtin_names()) text += n + "\n";
                } else {
                    Json j;
                    j["names"] = builtin_names();
                    text = json_text(j);
                }
                emit(text, common.out_path, out);
            }
            return kExitOk;
        },
        kGrammar, out, err);
}

} // namespace perfrd::cli
