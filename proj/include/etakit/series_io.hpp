#pragma once

// Text format for series:
//
//   # ring=<Z|Fp:l> prec=<P> residue=<r0|none> [key=value ...]
//   n c
//   ...
//
// one "n c" line per nonzero coefficient (index in 1/24-units, decimal
// coefficient). Extra header keys (weight=, kind=, index= for basis dumps)
// are preserved on read.

#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "qseries.hpp"

namespace etakit {

using AnySeries = std::variant<ZSeries, FSeries>;

struct SeriesBlock {
    AnySeries series;
    std::map<std::string, std::string> header;  // all header keys, including ring/prec/residue
};

template <class Ring>
void write_series(std::ostream& os, const QExp24<Ring>& f,
                  const std::vector<std::pair<std::string, std::string>>& extra = {}) {
    os << "# ring=" << f.ring().tag() << " prec=" << f.prec() << " residue=";
    if (f.residue())
        os << *f.residue();
    else
        os << "none";
    for (const auto& [k, v] : extra) os << ' ' << k << '=' << v;
    os << '\n';
    for (auto n : f.support()) os << n << ' ' << f.ring().to_string(f[n]) << '\n';
}

namespace detail {

inline std::map<std::string, std::string> parse_header(const std::string& line) {
    std::map<std::string, std::string> kv;
    std::istringstream is(line.substr(1));
    std::string tok;
    while (is >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw invalid_argument("series header: bad token '" + tok + "'");
        kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    for (const char* key : {"ring", "prec", "residue"})
        if (!kv.count(key))
            throw invalid_argument(std::string("series header: missing ") + key);
    return kv;
}

template <class Ring>
QExp24<Ring> build(const Ring& R, const std::map<std::string, std::string>& h,
                   const std::vector<std::pair<std::int64_t, std::string>>& terms) {
    const std::int64_t prec = std::stoll(h.at("prec"));
    std::optional<int> residue;
    if (h.at("residue") != "none") residue = std::stoi(h.at("residue"));
    std::vector<std::pair<std::int64_t, typename Ring::value_type>> parsed;
    parsed.reserve(terms.size());
    for (const auto& [n, c] : terms) parsed.emplace_back(n, R.parse(c));
    return QExp24<Ring>::from_terms(R, prec, parsed, residue);
}

inline SeriesBlock make_block(const std::map<std::string, std::string>& h,
                              const std::vector<std::pair<std::int64_t, std::string>>& terms) {
    const auto& ring = h.at("ring");
    if (ring == "Z") return {build(Integers{}, h, terms), h};
    if (ring.rfind("Fp:", 0) == 0) return {build(PrimeField(std::stoll(ring.substr(3))), h, terms), h};
    throw invalid_argument("series header: unknown ring '" + ring + "'");
}

}  // namespace detail

/// Reads every block (blank-line separated, each starting with a header).
inline std::vector<SeriesBlock> read_series_blocks(std::istream& is) {
    std::vector<SeriesBlock> blocks;
    std::optional<std::map<std::string, std::string>> header;
    std::vector<std::pair<std::int64_t, std::string>> terms;
    auto flush = [&] {
        if (header) blocks.push_back(detail::make_block(*header, terms));
        header.reset();
        terms.clear();
    };
    std::string line;
    try {
        while (std::getline(is, line)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) {
                flush();
                continue;
            }
            if (line[0] == '#') {
                flush();
                header = detail::parse_header(line);
                continue;
            }
            if (!header) throw invalid_argument("series: data line before header");
            std::istringstream ls(line);
            std::int64_t n;
            std::string c;
            if (!(ls >> n >> c)) throw invalid_argument("series: malformed line '" + line + "'");
            terms.emplace_back(n, c);
        }
        flush();
    } catch (const error&) {
        throw;
    } catch (const std::exception& e) {  // stoll/stoi and cpp_int parse failures
        throw invalid_argument(std::string("series: ") + e.what());
    }
    return blocks;
}

inline SeriesBlock read_series(std::istream& is) {
    auto blocks = read_series_blocks(is);
    if (blocks.size() != 1)
        throw invalid_argument("series: expected exactly one block, found " +
                               std::to_string(blocks.size()));
    return std::move(blocks.front());
}

}  // namespace etakit
