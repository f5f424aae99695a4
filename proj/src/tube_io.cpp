#include "tubecalc/error.hpp"
#include "tubecalc/tube.hpp"

#include <set>
#include <sstream>

namespace tubecalc {

// Sections, each introduced by a keyword line:
//   corners <name>...           (first corner is the unit corner)
//   basis     idx source target name label
//   units     corner idx
//   mult      a b c coeff       (coefficient of c in a*b)
//   star      a c coeff
//   trace     a coeff
//   counit    a coeff
// Tokens are separated by arbitrary whitespace; '#' starts a comment.
TubeAlgebra parse_tube(const std::string& text) {
    std::vector<std::string> corners;
    std::map<std::string, std::size_t> corner_index;
    std::vector<TubeBasis> basis;
    std::vector<std::pair<std::size_t, std::size_t>> unit_pairs;
    std::map<std::pair<std::size_t, std::size_t>, Element> mult;
    std::vector<std::array<std::string, 3>> star_raw, trace_raw, counit_raw;
    std::string section;

    static const std::set<std::string> sections{"basis", "units", "mult", "star", "trace", "counit"};
    std::istringstream in(text);
    std::size_t lineno = 0;
    auto number = [&](const std::string& tok) -> std::size_t {
        try {
            std::size_t used = 0;
            const unsigned long v = std::stoul(tok, &used);
            if (used != tok.size() || tok[0] == '-') throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(lineno) + ": expected an index, got '" + tok + "'");
        }
    };
    auto scalar = [&](const std::string& tok) {
        try {
            return RatFunc::parse(tok);
        } catch (const Error& e) {
            throw ParseError("line " + std::to_string(lineno) + ": bad coefficient '" + tok + "': " + e.what());
        }
    };
    auto corner_of = [&](const std::string& tok) {
        auto it = corner_index.find(tok);
        if (it == corner_index.end()) throw ParseError("line " + std::to_string(lineno) + ": unknown corner '" + tok + "'");
        return it->second;
    };

    for (std::string line; std::getline(in, line);) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        if (tok[0] == "corners") {
            for (std::size_t i = 1; i < tok.size(); ++i) {
                if (!corner_index.emplace(tok[i], corners.size()).second)
                    throw ParseError("duplicate corner '" + tok[i] + "'");
                corners.push_back(tok[i]);
            }
            section.clear();
            continue;
        }
        if (tok.size() == 1 && sections.count(tok[0])) {
            section = tok[0];
            continue;
        }
        auto want = [&](std::size_t k) {
            if (tok.size() != k)
                throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(k) + " fields in '" +
                                 section + "' section");
        };
        if (section == "basis") {
            want(5);
            if (number(tok[0]) != basis.size())
                throw ParseError("line " + std::to_string(lineno) + ": basis indices must be listed in order from 0");
            basis.push_back({corner_of(tok[1]), corner_of(tok[2]), tok[3], tok[4]});
        } else if (section == "units") {
            want(2);
            unit_pairs.emplace_back(corner_of(tok[0]), number(tok[1]));
        } else if (section == "mult") {
            want(4);
            const std::size_t a = number(tok[0]), b = number(tok[1]), c = number(tok[2]);
            if (a >= basis.size() || b >= basis.size() || c >= basis.size())
                throw ParseError("line " + std::to_string(lineno) + ": basis index out of range");
            add_to(mult[{a, b}], c, scalar(tok[3]));
        } else if (section == "star") {
            want(3);
            star_raw.push_back({tok[0], tok[1], tok[2]});
        } else if (section == "trace" || section == "counit") {
            want(2);
            (section == "trace" ? trace_raw : counit_raw).push_back({tok[0], tok[1], ""});
        } else {
            throw ParseError("line " + std::to_string(lineno) + ": data outside of a section");
        }
    }
    if (corners.empty()) throw ParseError("missing 'corners' line");
    const std::size_t n = basis.size();
    auto index = [&](const std::string& tok) {
        const std::size_t i = number(tok);
        if (i >= n) throw ParseError("basis index " + tok + " out of range");
        return i;
    };
    std::vector<Element> star(n);
    for (const auto& r : star_raw) add_to(star[index(r[0])], index(r[1]), scalar(r[2]));
    std::vector<RatFunc> trace(n), counit(n);
    for (const auto& r : trace_raw) trace[index(r[0])] += scalar(r[1]);
    for (const auto& r : counit_raw) counit[index(r[0])] += scalar(r[1]);
    std::vector<std::size_t> units(corners.size(), n);
    for (const auto& [c, u] : unit_pairs) units[c] = u;
    for (std::size_t i = 0; i < units.size(); ++i)
        if (units[i] == n) throw ParseError("corner '" + corners[i] + "' has no unit");

    TubeAlgebra A(std::move(corners), std::move(basis), std::move(mult), std::move(star), std::move(trace),
                  std::move(counit), std::move(units));
    const auto report = verify_identities(A);
    for (const auto& check : report.checks) {
        if (check.name == "lemma-sum") continue;  // a property of pointed data, not an axiom
        if (!check.passed()) throw InvariantViolation(check.name, check.witness, check.detail);
    }
    return A;
}

std::string serialize_tube(const TubeAlgebra& A) {
    std::ostringstream os;
    os << "corners";
    for (const auto& c : A.corners()) os << " " << c;
    os << "\nbasis\n";
    for (std::size_t a = 0; a < A.dim(); ++a) {
        const auto& b = A.basis(a);
        os << a << " " << A.corners()[b.source] << " " << A.corners()[b.target] << " " << b.name << " " << b.label << "\n";
    }
    os << "units\n";
    for (std::size_t i = 0; i < A.corners().size(); ++i) os << A.corners()[i] << " " << A.unit(i) << "\n";
    os << "mult\n";
    for (const auto& [key, x] : A.mult_table())
        for (const auto& [c, v] : x) os << key.first << " " << key.second << " " << c << " " << v.to_string() << "\n";
    os << "star\n";
    for (std::size_t a = 0; a < A.dim(); ++a)
        for (const auto& [c, v] : A.star(a)) os << a << " " << c << " " << v.to_string() << "\n";
    os << "trace\n";
    for (std::size_t a = 0; a < A.dim(); ++a)
        if (!A.trace(a).is_zero()) os << a << " " << A.trace(a).to_string() << "\n";
    os << "counit\n";
    for (std::size_t a = 0; a < A.dim(); ++a)
        if (!A.counit(a).is_zero()) os << a << " " << A.counit(a).to_string() << "\n";
    return os.str();
}

}  // namespace tubecalc
