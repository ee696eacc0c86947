#pragma once

// Shared plumbing for the rootdatum and sl2 command line tools: argument
// grammar dispatch, input resolution, output sinks, and the exit-code
// conventions (0 definite answer, 2 Unknown verdict, 1 error, 64 usage).

#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "perfrd/json_io.hpp"

namespace perfrd::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUnknown = 2;
inline constexpr int kExitUsage = 64;

// Violations of the documented argument grammar detected after CLI11 parsing
// (bad input prefixes, missing -p for builtin inputs, ...).
struct UsageError {
    std::string message;
};

inline bool has_prefix(const std::string& s, const std::string& prefix) {
    return s.rfind(prefix, 0) == 0;
}

// `file:<path>` or `builtin:<name>`; builtin inputs need the context prime.
// A -p flag must agree with the prime stored in a loaded file.
inline RootDatum resolve_datum(const std::string& spec, const std::optional<long>& p,
                               const std::string& flag) {
    if (has_prefix(spec, "builtin:")) {
        if (!p) throw UsageError{flag + "=builtin:... requires -p"};
        return builtin(spec.substr(8), *p);
    }
    if (has_prefix(spec, "file:")) {
        RootDatum rd = load_root_datum(spec.substr(5));
        if (p && rd.p() != *p)
            fail(Errc::PrimeMismatch, flag + ": file has p=" + std::to_string(rd.p()) +
                                          " but -p " + std::to_string(*p) + " was given");
        return rd;
    }
    throw UsageError{flag + " must be file:<path> or builtin:<name>"};
}

// Writes to -o when given, else to the attached stream.  Binary mode so the
// bytes are exactly the rendered text on every platform.
inline void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) fail(Errc::IoError, "cannot write " + out_path);
    f << text;
    if (!f) fail(Errc::IoError, "short write to " + out_path);
}

inline std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

inline const char* yes_no(bool b) { return b ? "yes" : "no"; }

// Matrix rows as aligned plain text, two spaces of indent.
inline std::string matrix_lines(const MatQ& m) {
    std::vector<std::vector<std::string>> cells(m.rows());
    std::vector<size_t> width(m.cols(), 0);
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) {
            cells[r].push_back(m(r, c).str());
            width[c] = std::max(width[c], cells[r].back().size());
        }
    std::string out;
    for (int r = 0; r < m.rows(); ++r) {
        out += " ";
        for (int c = 0; c < m.cols(); ++c) {
            out += " ";
            out.append(width[c] - cells[r][c].size(), ' ');
            out += cells[r][c];
        }
        out += "\n";
    }
    return out;
}

// Runs the tool body with uniform exception-to-exit-code mapping.  The body
// performs CLI11 parsing itself so CallForHelp can print contextual help.
template <typename Body>
int run_command(Body&& body, const std::string& grammar, std::ostream& out, std::ostream& err) {
    try {
        return body();
    } catch (const CLI::Success& e) { // --help
        (void)e;
        out << grammar;
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << grammar;
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.message << "\n\n" << grammar;
        return kExitUsage;
    } catch (const Error& e) {
        err << errc_name(e.code) << ": " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
}

} // namespace perfrd::cli
