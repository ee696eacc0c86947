#include "sl2_cmd.hpp"

#include <sstream>

#include "cli_support.hpp"

namespace perfrd::cli {

namespace {

const char* kGrammar =
    "usage: sl2 <weights|ext|decomp|weyltype|socle|blocks|fractal|oracle> [flags]\n"
    "\n"
    "common flags\n"
    "  -p <prime>             context prime (required)\n"
    "  --format json|table    output rendering (default json)\n"
    "  -o <file>              write output to a file instead of stdout\n"
    "weights are scalars written \"num\" or \"num/den\" with a p-power denominator\n"
    "\n"
    "subcommands\n"
    "  weights  --n <scalar> [--w <scalar>]   weight list of the simple module\n"
    "                                         (with --w: dim of that weight space)\n"
    "  ext      --lambda <s> --mu <s> --target simple|costandard\n"
    "                                         dim Ext^1 from the simple of highest\n"
    "                                         weight lambda\n"
    "  decomp   --lambda <s> [--depth N]      factors of the induced module\n"
    "  weyltype --lambda <s> [--depth N]      factors of the Weyl-type module\n"
    "  socle    --lambda <s> [--depth N]      socle filtration report\n"
    "  blocks   --lambda <s> [--mu <s>]       block label (and same-block test)\n"
    "  fractal  --max-n N --depth N [--render svg|pgm|json]\n"
    "                                         weight-multiplicity fractal; default\n"
    "                                         render is svg (pgm when -o ends .pgm)\n"
    "  oracle   --lambda-max N                classical decomposition numbers\n"
    "                                         (--format table emits CSV)\n"
    "\n"
    "exit codes: 0 success, 1 error, 64 usage\n";

struct CommonFlags {
    long p = 0;
    std::string format = "json";
    std::string out_path;
};

void add_common(CLI::App* cmd, CommonFlags* common) {
    cmd->add_option("-p", common->p, "context prime")->required();
    cmd->add_option("--format", common->format, "output format")
        ->check(CLI::IsMember({"json", "table"}));
    cmd->add_option("-o", common->out_path, "output file");
}

// Malformed literals are grammar violations (exit 64); well-formed scalars
// outside Z[1/p] are domain errors (exit 1).
LocalizedRational cli_scalar(const std::string& text, long p, const std::string& flag) {
    LocalizedRational x;
    try {
        x = LocalizedRational::parse(text);
    } catch (const Error&) {
        throw UsageError{flag + ": bad scalar literal \"" + text + "\""};
    }
    if (!is_p_local(x, p))
        fail(Errc::NotPLocal,
             flag + "=" + text + " does not lie in Z[1/" + std::to_string(p) + "]");
    return x;
}

std::string scalar_row(const std::vector<LocalizedRational>& xs) {
    std::string s;
    for (const auto& x : xs) {
        if (!s.empty()) s += " ";
        s += x.str();
    }
    return s;
}

std::string mult_table(const MultiplicityReport& report) {
    std::ostringstream s;
    s << "lambda: " << report.lambda.str() << "\n";
    s << "p: " << report.p << "\n";
    s << "scale_exponent: " << report.scale_exponent << "\n";
    s << "truncation: " << report.truncation << "\n";
    s << "tail_continues: " << yes_no(report.tail_continues) << "\n";
    s << "mu  multiplicity  origin  nu  tail_exponent\n";
    for (const auto& f : report.factors) {
        s << f.mu.str() << "  " << f.multiplicity << "  ";
        if (f.origin == FactorOrigin::Tail)
            s << "tail  " << f.nu << "  " << f.tail_exponent << "\n";
        else
            s << "integral  -  -\n";
    }
    return s.str();
}

std::string socle_table(const SocleReport& report) {
    std::ostringstream s;
    s << "lambda: " << report.lambda.str() << "\n";
    s << "p: " << report.p << "\n";
    s << "certified: " << yes_no(report.certified) << "\n";
    s << "depth: " << report.depth << "\n";
    s << "tail_continues: " << yes_no(report.tail_continues) << "\n";
    for (size_t i = 0; i < report.layers.size(); ++i)
        s << "layer " << (i + 1) << ": " << scalar_row(report.layers[i]) << "\n";
    if (!report.factors.empty()) s << "factors: " << scalar_row(report.factors) << "\n";
    return s.str();
}

} // namespace

int run_sl2(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    return run_command(
        [&]() -> int {
            CLI::App app{"representations of perfected SL2"};
            app.require_subcommand(1);

            CommonFlags common;
            std::string n_text, w_text, lambda_text, mu_text, target = "simple";
            std::string render = "auto";
            long depth = 6, max_n = 0, fractal_depth = 0, lambda_max = 0;

            CLI::App* weights_cmd = app.add_subcommand("weights");
            add_common(weights_cmd, &common);
            weights_cmd->add_option("--n", n_text)->required();
            weights_cmd->add_option("--w", w_text);

            CLI::App* ext_cmd = app.add_subcommand("ext");
            add_common(ext_cmd, &common);
            ext_cmd->add_option("--lambda", lambda_text)->required();
            ext_cmd->add_option("--mu", mu_text)->required();
            ext_cmd->add_option("--target", target)
                ->required()
                ->check(CLI::IsMember({"simple", "costandard"}));

            CLI::App* decomp_cmd = app.add_subcommand("decomp");
            add_common(decomp_cmd, &common);
            decomp_cmd->add_option("--lambda", lambda_text)->required();
            decomp_cmd->add_option("--depth", depth)->check(CLI::NonNegativeNumber);

            CLI::App* weyltype_cmd = app.add_subcommand("weyltype");
            add_common(weyltype_cmd, &common);
            weyltype_cmd->add_option("--lambda", lambda_text)->required();
            weyltype_cmd->add_option("--depth", depth)->check(CLI::NonNegativeNumber);

            CLI::App* socle_cmd = app.add_subcommand("socle");
            add_common(socle_cmd, &common);
            socle_cmd->add_option("--lambda", lambda_text)->required();
            socle_cmd->add_option("--depth", depth)->check(CLI::NonNegativeNumber);

            CLI::App* blocks_cmd = app.add_subcommand("blocks");
            add_common(blocks_cmd, &common);
            blocks_cmd->add_option("--lambda", lambda_text)->required();
            blocks_cmd->add_option("--mu", mu_text);

            CLI::App* fractal_cmd = app.add_subcommand("fractal");
            add_common(fractal_cmd, &common);
            fractal_cmd->add_option("--max-n", max_n)->required()->check(CLI::NonNegativeNumber);
            fractal_cmd->add_option("--depth", fractal_depth)
                ->required()
                ->check(CLI::NonNegativeNumber);
            fractal_cmd->add_option("--render", render)
                ->check(CLI::IsMember({"auto", "svg", "pgm", "json"}));

            CLI::App* oracle_cmd = app.add_subcommand("oracle");
            add_common(oracle_cmd, &common);
            oracle_cmd->add_option("--lambda-max", lambda_max)
                ->required()
                ->check(CLI::NonNegativeNumber);

            std::vector<std::string> rev(args.rbegin(), args.rend());
            app.parse(rev);

            require_prime(common.p);
            const long p = common.p;
            const bool table = common.format == "table";

            if (weights_cmd->parsed()) {
                LocalizedRational n = cli_scalar(n_text, p, "--n");
                if (!w_text.empty()) {
                    int dim = simple_weight_dim(n, cli_scalar(w_text, p, "--w"), p);
                    Json j;
                    j["dim"] = dim;
                    emit(table ? "dim: " + std::to_string(dim) + "\n" : json_text(j),
                         common.out_path, out);
                } else {
                    auto ws = simple_weights(n, p);
                    std::string text;
                    if (table) {
                        text = "n: " + n.str() + "\ncount: " + std::to_string(ws.size()) +
                               "\nweights: " + scalar_row(ws) + "\n";
                    } else {
                        Json j;
                        j["n"] = n.str();
                        j["p"] = p;
                        j["count"] = static_cast<long>(ws.size());
                        Json list = Json::array();
                        for (const auto& w : ws) list.push_back(w.str());
                        j["weights"] = std::move(list);
                        text = json_text(j);
                    }
                    emit(text, common.out_path, out);
                }
                return kExitOk;
            }
            if (ext_cmd->parsed()) {
                LocalizedRational lambda = cli_scalar(lambda_text, p, "--lambda");
                LocalizedRational mu = cli_scalar(mu_text, p, "--mu");
                ExtTarget tgt = target == "simple" ? ExtTarget::Simple : ExtTarget::Costandard;
                int dim = ext1(lambda, mu, tgt, p);
                Json j;
                j["dim"] = dim;
                emit(table ? "dim: " + std::to_string(dim) + "\n" : json_text(j),
                     common.out_path, out);
                return kExitOk;
            }
            if (decomp_cmd->parsed() || weyltype_cmd->parsed()) {
                LocalizedRational lambda = cli_scalar(lambda_text, p, "--lambda");
                Sl2Perfect engine(p);
                MultiplicityReport report = decomp_cmd->parsed()
                                                ? engine.costandard_factors(lambda, depth)
                                                : engine.weyl_type_factors(lambda, depth);
                emit(table ? mult_table(report) : json_text(to_json(report)), common.out_path,
                     out);
                return kExitOk;
            }
            if (socle_cmd->parsed()) {
                LocalizedRational lambda = cli_scalar(lambda_text, p, "--lambda");
                Sl2Perfect engine(p);
                SocleReport report = engine.socle_series(lambda, depth);
                emit(table ? socle_table(report) : json_text(to_json(report)), common.out_path,
                     out);
                return kExitOk;
            }
            if (blocks_cmd->parsed()) {
                LocalizedRational lambda = cli_scalar(lambda_text, p, "--lambda");
                Sl2Perfect engine(p);
                Json j;
                j["p"] = p;
                j["lambda"] = lambda.str();
                j["block"] = engine.block_label(lambda);
                std::ostringstream t;
                t << "lambda: " << lambda.str() << "\nblock: " << engine.block_label(lambda)
                  << "\n";
                if (!mu_text.empty()) {
                    LocalizedRational mu = cli_scalar(mu_text, p, "--mu");
                    j["mu"] = mu.str();
                    j["mu_block"] = engine.block_label(mu);
                    j["same_block"] = engine.same_block(lambda, mu);
                    t << "mu: " << mu.str() << "\nmu_block: " << engine.block_label(mu)
                      << "\nsame_block: " << yes_no(engine.same_block(lambda, mu)) << "\n";
                }
                emit(table ? t.str() : json_text(j), common.out_path, out);
                return kExitOk;
            }
            if (fractal_cmd->parsed()) {
                FractalImage img = fractal(p, max_n, fractal_depth);
                std::string mode = render;
                if (mode == "auto") {
                    bool pgm = common.out_path.size() >= 4 &&
                               common.out_path.rfind(".pgm") == common.out_path.size() - 4;
                    mode = pgm ? "pgm" : "svg";
                }
                std::string text;
                if (mode == "svg")
                    text = fractal_svg(img);
                else if (mode == "pgm")
                    text = fractal_pgm(img);
                else
                    text = json_text(to_json(img));
                emit(text, common.out_path, out);
                return kExitOk;
            }
            // oracle
            ClassicalSl2 oracle(p);
            DecompTable tableau = oracle.decomposition_numbers(lambda_max);
            std::string text;
            if (table) {
                text = decomp_csv(tableau);
            } else {
                Json j;
                j["p"] = tableau.p;
                j["lambda_max"] = tableau.lambda_max;
                Json rows = Json::array();
                for (long l = 0; l <= tableau.lambda_max; ++l)
                    for (const auto& [mu, mult] : tableau.rows[l]) {
                        Json row;
                        row["lambda"] = l;
                        row["mu"] = mu;
                        row["multiplicity"] = mult;
                        rows.push_back(std::move(row));
                    }
                j["rows"] = std::move(rows);
                text = json_text(j);
            }
            emit(text, common.out_path, out);
            return kExitOk;
        },
        kGrammar, out, err);
}

} // namespace perfrd::cli
