#pragma once

// JSON and CSV serialization for the library types, shared by the command
// line tools and the test suites.  Scalars render as "num" or "num/den" with
// a p-power denominator; matrices as arrays of arrays of scalar strings
// (the root-datum pairing, always integral, as arrays of plain ints).
// Loaders validate structure on ingest: shapes must be consistent, p must be
// prime, and every scalar must lie in Z[1/p].  Emission uses ordered_json so
// identical inputs produce byte-identical output.

#include <string>

#include <json.hpp>

#include "perfrd/rootdata.hpp"
#include "perfrd/sl2_classical.hpp"
#include "perfrd/sl2_perfect.hpp"
#include "perfrd/zp_equiv.hpp"

namespace perfrd {

using Json = nlohmann::ordered_json;

// --- scalars and matrices ----------------------------------------------------

// Accepts a JSON string in the serialization format, or a plain JSON integer.
// Throws Errc::ParseError on other node types and Errc::NotPLocal when the
// denominator is not a power of p.
LocalizedRational scalar_from_json(const Json& node, long p);

// Arrays of arrays of scalar entries; rows must have equal lengths and the
// matrix must be nonempty.  Same error contract as scalar_from_json.
MatQ matq_from_json(const Json& node, long p);

Json to_json(const MatQ& m);
Json to_json(const MatZ& m);

// --- root data ----------------------------------------------------------------

// {"p", "rank_X", "rank_Y", "pairing", "roots", "coroots", "positive_count",
//  "name"?}.  Roots and coroots are emitted in the stored normalized form.
Json to_json(const RootDatum& rd);

// Structural validation on ingest: field presence and types, prime p, shape
// consistency, scalar membership in Z[1/p], and positive_count within range.
// Axioms beyond structure (pairing unimodularity, reflection closure, ...)
// are deliberately left to validate() so `rootdatum validate` can report
// them item by item instead of refusing to load.
RootDatum root_datum_from_json(const Json& node);

// Reads and parses a file; Errc::IoError when unreadable, Errc::ParseError on
// malformed JSON, then the root_datum_from_json contract.
RootDatum load_root_datum(const std::string& path);

// --- reports -------------------------------------------------------------------

Json to_json(const ValidationReport& report);
Json to_json(const IsoVerdict& verdict);
Json to_json(const IsogenyCheck& check);
Json to_json(const WeylGroup& w);
Json to_json(const MultiplicityReport& report);
Json to_json(const SocleReport& report);
Json to_json(const FractalImage& img);

// "lambda,mu,multiplicity" rows, ascending lambda then mu, with a header line.
std::string decomp_csv(const DecompTable& table);

} // namespace perfrd
