#include "perfrd/json_io.hpp"

#include <fstream>
#include <sstream>

namespace perfrd {

namespace {

// nlohmann's is_number_integer() rejects doubles like 2.0; that is what we
// want — ranks and pairings must be written as integer literals.
long require_int(const Json& node, const std::string& what) {
    if (!node.is_number_integer())
        fail(Errc::ParseError, what + " must be an integer");
    return node.get<long>();
}

const Json& require_field(const Json& node, const std::string& key) {
    auto it = node.find(key);
    if (it == node.end()) fail(Errc::ParseError, "missing field: " + key);
    return *it;
}

std::vector<VecQ> vectors_from_json(const Json& node, long p, int length,
                                    const std::string& what) {
    if (!node.is_array()) fail(Errc::ParseError, what + " must be an array");
    std::vector<VecQ> out;
    for (const Json& row : node) {
        if (!row.is_array() || static_cast<int>(row.size()) != length)
            fail(Errc::ParseError, what + " rows must be arrays of length " +
                                       std::to_string(length));
        VecQ v(length);
        for (int i = 0; i < length; ++i) v[i] = scalar_from_json(row[i], p);
        out.push_back(std::move(v));
    }
    return out;
}

Json vecq_to_json(const VecQ& v) {
    Json row = Json::array();
    for (const auto& x : v) row.push_back(x.str());
    return row;
}

Json scalar_list_to_json(const std::vector<LocalizedRational>& xs) {
    Json out = Json::array();
    for (const auto& x : xs) out.push_back(x.str());
    return out;
}

} // namespace

// --- scalars and matrices ----------------------------------------------------

LocalizedRational scalar_from_json(const Json& node, long p) {
    LocalizedRational x;
    if (node.is_string()) {
        x = LocalizedRational::parse(node.get<std::string>());
    } else if (node.is_number_integer()) {
        x = LocalizedRational(mpz_class(node.get<long>()));
    } else {
        fail(Errc::ParseError, "scalar must be a string or an integer");
    }
    if (!is_p_local(x, p))
        fail(Errc::NotPLocal, "denominator of " + x.str() + " is not a power of " +
                                  std::to_string(p));
    return x;
}

MatQ matq_from_json(const Json& node, long p) {
    if (!node.is_array() || node.empty())
        fail(Errc::ParseError, "matrix must be a nonempty array of rows");
    const int cols = node[0].is_array() ? static_cast<int>(node[0].size()) : -1;
    if (cols <= 0) fail(Errc::ParseError, "matrix rows must be nonempty arrays");
    MatQ m(static_cast<int>(node.size()), cols);
    for (int r = 0; r < m.rows(); ++r) {
        const Json& row = node[r];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            fail(Errc::ParseError, "matrix rows must all have length " +
                                       std::to_string(cols));
        for (int c = 0; c < cols; ++c) m(r, c) = scalar_from_json(row[c], p);
    }
    return m;
}

Json to_json(const MatQ& m) {
    Json rows = Json::array();
    for (int r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const MatZ& m) { return to_json(to_rational(m)); }

// --- root data ----------------------------------------------------------------

Json to_json(const RootDatum& rd) {
    Json j;
    j["p"] = rd.p();
    j["rank_X"] = rd.rank_x();
    j["rank_Y"] = rd.rank_y();
    Json pairing = Json::array();
    for (int r = 0; r < rd.pairing().rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < rd.pairing().cols(); ++c)
            row.push_back(rd.pairing()(r, c).get_si());
        pairing.push_back(std::move(row));
    }
    j["pairing"] = std::move(pairing);
    Json roots = Json::array();
    for (const VecZ& a : rd.roots()) roots.push_back(vecq_to_json(to_rational(a)));
    j["roots"] = std::move(roots);
    Json coroots = Json::array();
    for (const VecQ& av : rd.coroots()) coroots.push_back(vecq_to_json(av));
    j["coroots"] = std::move(coroots);
    j["positive_count"] = rd.positive_count();
    if (!rd.name().empty()) j["name"] = rd.name();
    return j;
}

RootDatum root_datum_from_json(const Json& node) {
    if (!node.is_object()) fail(Errc::ParseError, "root datum must be a JSON object");
    long p = require_int(require_field(node, "p"), "p");
    require_prime(p);
    long rank_x = require_int(require_field(node, "rank_X"), "rank_X");
    long rank_y = require_int(require_field(node, "rank_Y"), "rank_Y");
    if (rank_x < 0 || rank_y < 0) fail(Errc::ParseError, "ranks must be nonnegative");

    const Json& jp = require_field(node, "pairing");
    if (!jp.is_array() || static_cast<long>(jp.size()) != rank_x)
        fail(Errc::ParseError, "pairing must have rank_X rows");
    MatZ pairing(static_cast<int>(rank_x), static_cast<int>(rank_y));
    for (long r = 0; r < rank_x; ++r) {
        const Json& row = jp[r];
        if (!row.is_array() || static_cast<long>(row.size()) != rank_y)
            fail(Errc::ParseError, "pairing rows must have length rank_Y");
        for (long c = 0; c < rank_y; ++c)
            pairing(static_cast<int>(r), static_cast<int>(c)) =
                mpz_class(require_int(row[c], "pairing entry"));
    }

    auto roots = vectors_from_json(require_field(node, "roots"), p,
                                   static_cast<int>(rank_x), "roots");
    auto coroots = vectors_from_json(require_field(node, "coroots"), p,
                                     static_cast<int>(rank_y), "coroots");
    if (roots.size() != coroots.size())
        fail(Errc::ParseError, "roots and coroots must have equal length");

    long positive = require_int(require_field(node, "positive_count"), "positive_count");
    if (positive < 0 || 2 * positive != static_cast<long>(roots.size()))
        fail(Errc::ParseError, "positive_count must be half the root count");

    std::string name;
    if (auto it = node.find("name"); it != node.end()) {
        if (!it->is_string()) fail(Errc::ParseError, "name must be a string");
        name = it->get<std::string>();
    }
    for (const VecQ& a : roots)
        if (std::all_of(a.begin(), a.end(), [](const LocalizedRational& x) { return x.is_zero(); }))
            fail(Errc::ParseError, "zero vector listed as a root");
    return RootDatum(p, std::move(pairing), std::move(roots), std::move(coroots),
                     static_cast<int>(positive), std::move(name));
}

RootDatum load_root_datum(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::IoError, "cannot read " + path);
    Json j = Json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) fail(Errc::ParseError, "malformed JSON in " + path);
    return root_datum_from_json(j);
}

// --- reports -------------------------------------------------------------------

Json to_json(const ValidationReport& report) {
    Json j;
    j["ok"] = report.ok;
    Json items = Json::array();
    for (const auto& item : report.items) {
        Json ji;
        ji["axiom"] = item.axiom;
        ji["pass"] = item.pass;
        ji["offenders"] = item.offenders;
        ji["detail"] = item.detail;
        items.push_back(std::move(ji));
    }
    j["items"] = std::move(items);
    return j;
}

Json to_json(const IsoVerdict& verdict) {
    Json j;
    j["status"] = to_string(verdict.status);
    if (verdict.witness) j["witness"] = to_json(*verdict.witness);
    if (verdict.certificate) {
        Json c;
        c["invariant"] = verdict.certificate->invariant;
        c["lhs"] = verdict.certificate->lhs;
        c["rhs"] = verdict.certificate->rhs;
        j["certificate"] = std::move(c);
    }
    Json b;
    b["nodes"] = verdict.budget_spent.nodes;
    b["exhausted"] = verdict.budget_spent.exhausted;
    j["budget_spent"] = std::move(b);
    return j;
}

Json to_json(const IsogenyCheck& check) {
    Json j;
    j["ok"] = check.ok;
    j["reasons"] = check.reasons;
    if (check.witness) {
        Json w;
        w["phi"] = to_json(check.witness->phi);
        w["root_bijection"] = check.witness->root_bijection;
        w["steinberg_shift"] = check.witness->steinberg_shift;
        j["witness"] = std::move(w);
    }
    return j;
}

Json to_json(const WeylGroup& w) {
    Json j;
    j["order"] = w.order;
    j["cartan_type"] = w.cartan_type;
    j["element_count"] = static_cast<long>(w.elements.size());
    if (w.longest) j["longest"] = *w.longest;
    return j;
}

Json to_json(const MultiplicityReport& report) {
    Json j;
    j["lambda"] = report.lambda.str();
    j["p"] = report.p;
    j["scale_exponent"] = report.scale_exponent;
    j["truncation"] = report.truncation;
    j["tail_continues"] = report.tail_continues;
    Json factors = Json::array();
    for (const auto& f : report.factors) {
        Json jf;
        jf["mu"] = f.mu.str();
        jf["multiplicity"] = f.multiplicity;
        jf["origin"] = f.origin == FactorOrigin::Integral ? "integral" : "tail";
        if (f.origin == FactorOrigin::Tail) {
            jf["nu"] = f.nu;
            jf["tail_exponent"] = f.tail_exponent;
        }
        factors.push_back(std::move(jf));
    }
    j["factors"] = std::move(factors);
    return j;
}

Json to_json(const SocleReport& report) {
    Json j;
    j["lambda"] = report.lambda.str();
    j["p"] = report.p;
    j["certified"] = report.certified;
    j["depth"] = report.depth;
    j["tail_continues"] = report.tail_continues;
    Json layers = Json::array();
    for (const auto& layer : report.layers) layers.push_back(scalar_list_to_json(layer));
    j["layers"] = std::move(layers);
    j["factors"] = scalar_list_to_json(report.factors);
    return j;
}

Json to_json(const FractalImage& img) {
    Json j;
    j["p"] = img.p;
    j["max_n"] = img.max_n;
    j["depth"] = img.depth;
    j["scale"] = img.scale;
    Json points = Json::array();
    for (const auto& [x, y] : img.points) points.push_back(Json::array({x, y}));
    j["points"] = std::move(points);
    return j;
}

std::string decomp_csv(const DecompTable& table) {
    std::ostringstream out;
    out << "lambda,mu,multiplicity\n";
    for (long lambda = 0; lambda <= table.lambda_max; ++lambda)
        for (const auto& [mu, mult] : table.rows[lambda])
            out << lambda << ',' << mu << ',' << mult << '\n';
    return out.str();
}

} // namespace perfrd
