#include "tubecalc/error.hpp"
#include "tubecalc/fusion.hpp"

#include <map>
#include <sstream>

namespace tubecalc {

// Format:
//   labels e g ...        (first label is the unit)
//   dual g e ...          (optional, dual of each label in order; default: self-dual)
//   dims 1 1 ...          (optional; default: Perron-Frobenius dims)
//   a b c mult            (one line per nonzero structure constant)
// '#' starts a comment.
FusionRing parse_fusion(const std::string& text) {
    std::vector<std::string> labels;
    std::vector<std::string> dual_names;
    std::optional<std::vector<double>> dims;
    std::vector<std::array<std::string, 3>> raw;
    std::vector<unsigned long> mults;
    std::vector<std::size_t> line_of;

    std::istringstream in(text);
    std::size_t lineno = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        const std::string where = "line " + std::to_string(lineno);
        if (tok[0] == "labels") {
            labels.assign(tok.begin() + 1, tok.end());
        } else if (tok[0] == "dual") {
            dual_names.assign(tok.begin() + 1, tok.end());
        } else if (tok[0] == "dims") {
            dims.emplace();
            for (std::size_t i = 1; i < tok.size(); ++i) {
                try {
                    dims->push_back(std::stod(tok[i]));
                } catch (const std::exception&) {
                    throw ParseError(where + ": bad dimension '" + tok[i] + "'");
                }
            }
        } else {
            if (tok.size() != 4) throw ParseError(where + ": expected 'a b c mult'");
            unsigned long m = 0;
            try {
                std::size_t used = 0;
                m = std::stoul(tok[3], &used);
                if (used != tok[3].size() || tok[3][0] == '-') throw std::invalid_argument("mult");
            } catch (const std::exception&) {
                throw ParseError(where + ": multiplicity must be a nonnegative integer");
            }
            raw.push_back({tok[0], tok[1], tok[2]});
            mults.push_back(m);
            line_of.push_back(lineno);
        }
    }
    if (labels.empty()) throw ParseError("missing 'labels' line");
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (!index.emplace(labels[i], i).second) throw ParseError("duplicate label '" + labels[i] + "'");
    auto lookup = [&](const std::string& name, std::size_t line) {
        auto it = index.find(name);
        if (it == index.end()) throw ParseError("line " + std::to_string(line) + ": unknown label '" + name + "'");
        return it->second;
    };
    std::vector<std::size_t> dual(labels.size());
    if (dual_names.empty()) {
        for (std::size_t i = 0; i < dual.size(); ++i) dual[i] = i;
    } else {
        if (dual_names.size() != labels.size()) throw ParseError("'dual' line must list one label per label");
        for (std::size_t i = 0; i < dual.size(); ++i) dual[i] = lookup(dual_names[i], 0);
    }
    std::vector<std::array<std::size_t, 4>> entries;
    for (std::size_t r = 0; r < raw.size(); ++r)
        entries.push_back({lookup(raw[r][0], line_of[r]), lookup(raw[r][1], line_of[r]), lookup(raw[r][2], line_of[r]),
                           mults[r]});
    return FusionRing::from_table("file", std::move(labels), std::move(dual), entries, std::move(dims));
}

std::string serialize_fusion(const FusionRing& ring) {
    if (ring.truncated()) throw Error("cannot serialize a truncated window");
    std::ostringstream os;
    os << "labels";
    for (const auto& l : ring.labels()) os << " " << l;
    os << "\ndual";
    for (std::size_t i = 0; i < ring.size(); ++i) os << " " << ring.label(ring.dual(i));
    os << "\ndims";
    os.precision(17);
    for (double d : ring.dims()) os << " " << d;
    os << "\n";
    for (std::size_t a = 0; a < ring.size(); ++a)
        for (std::size_t b = 0; b < ring.size(); ++b)
            for (const auto& [c, m] : ring.product(a, b).terms)
                os << ring.label(a) << " " << ring.label(b) << " " << ring.label(c) << " " << m << "\n";
    return os.str();
}

}  // namespace tubecalc
