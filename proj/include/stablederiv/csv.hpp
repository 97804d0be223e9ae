#pragma once

// CSV front ends. Output is UTF-8 with a header row, '.' decimals, '\n' line
// endings and shortest round-trip number text, so identical inputs always give
// byte-identical files.

#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "stablederiv/adversary.hpp"
#include "stablederiv/errors.hpp"
#include "stablederiv/estimator.hpp"
#include "stablederiv/format.hpp"
#include "stablederiv/function_model.hpp"

namespace stablederiv::csv {

inline void write_report(std::ostream& out, const EstimateReport& r) {
    const bool with_error = r.abs_errors.has_value();
    out << "x,estimate,h,bound" << (with_error ? ",abs_error" : "") << '\n';
    const std::string h = format_double(r.h_used);
    const std::string bound = format_double(r.guaranteed_bound);
    for (std::size_t i = 0; i < r.points.size(); ++i) {
        out << format_double(r.points[i]) << ',' << format_double(r.estimates[i]) << ',' << h << ',' << bound;
        if (with_error) out << ',' << format_double((*r.abs_errors)[i]);
        out << '\n';
    }
}

inline void write_challenge_header(std::ostream& out) { out << "estimator,delta,M,b,err_f1,err_f2,worst,lower,beaten\n"; }

inline void write_challenge_row(std::ostream& out, const ChallengeRecord& c) {
    out << c.estimator << ',' << format_double(c.delta) << ',' << format_double(c.M) << ',' << format_double(c.b) << ','
        << format_double(c.err_f1) << ',' << format_double(c.err_f2) << ',' << format_double(c.worst) << ','
        << format_double(c.lower) << ',' << (c.beaten ? "true" : "false") << '\n';
}

inline void write_grid(std::ostream& out, const GridSignal& s) {
    out << "x,value\n";
    for (std::size_t k = 0; k < s.size(); ++k) out << format_double(s.x_at(k)) << ',' << format_double(s.values()[k]) << '\n';
}

/// Reads a `x,value` CSV sampled on a uniform grid. Spacing is (x_last - x_0)/(n - 1)
/// and every abscissa must sit on that grid to within 1e-9 spacings.
inline GridSignal read_grid(std::istream& in, double delta) {
    std::string line;
    if (!std::getline(in, line)) throw ConfigurationError("grid CSV is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "x,value") throw ConfigurationError("grid CSV header must be 'x,value', got '" + line + "'");

    std::vector<double> xs;
    std::vector<double> vs;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
            throw ConfigurationError("grid CSV line " + std::to_string(lineno) + " must have two fields");
        }
        xs.push_back(parse_double(std::string_view(line).substr(0, comma), "x"));
        vs.push_back(parse_double(std::string_view(line).substr(comma + 1), "value"));
    }
    if (xs.size() < 3) throw ConfigurationError("grid CSV needs at least 3 samples");
    const double spacing = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
    if (!(spacing > 0.0)) throw ConfigurationError("grid CSV abscissae must increase");
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double expected = xs.front() + static_cast<double>(k) * spacing;
        if (std::abs(xs[k] - expected) > 1e-9 * spacing) {
            throw ConfigurationError("grid CSV is not uniformly spaced near x = " + format_double(xs[k]));
        }
    }
    return GridSignal(xs.front(), spacing, std::move(vs), delta);
}

inline GridSignal read_grid_file(const std::string& path, double delta) {
    std::ifstream in(path);
    if (!in) throw ConfigurationError("cannot open grid CSV '" + path + "'");
    return read_grid(in, delta);
}

} // namespace stablederiv::csv
