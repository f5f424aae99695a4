#include "tubecalc/group.hpp"

#include "tubecalc/error.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <sstream>

namespace tubecalc {

GroupTable::GroupTable(std::vector<std::string> names, std::vector<std::vector<std::size_t>> table)
    : names_(std::move(names)), table_(std::move(table)) {
    const std::size_t n = names_.size();
    if (n == 0) throw NotAGroup("nonempty", {});
    if (table_.size() != n) throw NotAGroup("closure", {table_.size()});
    for (std::size_t a = 0; a < n; ++a) {
        if (table_[a].size() != n) throw NotAGroup("closure", {a});
        for (std::size_t b = 0; b < n; ++b)
            if (table_[a][b] >= n) throw NotAGroup("closure", {a, b});
    }
    auto e = std::find_if(table_.begin(), table_.end(), [&](const auto& row) {
        const std::size_t i = static_cast<std::size_t>(&row - table_.data());
        for (std::size_t b = 0; b < n; ++b)
            if (row[b] != b || table_[b][i] != b) return false;
        return true;
    });
    if (e == table_.end()) throw NotAGroup("identity", {});
    identity_ = static_cast<std::size_t>(e - table_.begin());
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) throw NotAGroup("associativity", {a, b, c});
    inverse_.assign(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b)
            if (table_[a][b] == identity_ && table_[b][a] == identity_) inverse_[a] = b;
        if (inverse_[a] == n) throw NotAGroup("inverses", {a});
    }
}

GroupTable GroupTable::cyclic(std::size_t n) {
    if (n == 0) throw Error("cyclic group of order 0");
    std::vector<std::string> names;
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a) {
        names.push_back(a == 0 ? "e" : "g" + (a == 1 ? std::string() : "^" + std::to_string(a)));
        for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    }
    return GroupTable(std::move(names), std::move(t));
}

GroupTable GroupTable::dihedral(std::size_t n) {
    if (n == 0) throw Error("dihedral group needs n >= 1");
    // element r^i s^j has index i + n*j; s r = r^-1 s
    const std::size_t order = 2 * n;
    std::vector<std::string> names;
    for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            std::string s = i == 0 ? "" : (i == 1 ? "r" : "r^" + std::to_string(i));
            if (j) s += "s";
            names.push_back(s.empty() ? "e" : s);
        }
    std::vector<std::vector<std::size_t>> t(order, std::vector<std::size_t>(order));
    for (std::size_t a = 0; a < order; ++a)
        for (std::size_t b = 0; b < order; ++b) {
            const std::size_t i1 = a % n, j1 = a / n, i2 = b % n, j2 = b / n;
            const std::size_t i = j1 ? (i1 + n - i2) % n : (i1 + i2) % n;
            t[a][b] = i + n * ((j1 + j2) % 2);
        }
    return GroupTable(std::move(names), std::move(t));
}

GroupTable GroupTable::symmetric3() {
    std::vector<std::array<int, 3>> perms;
    std::array<int, 3> p{0, 1, 2};
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::vector<std::string> names;
    for (const auto& q : perms) {
        std::string s;
        for (int x : q) s += static_cast<char>('1' + x);
        names.push_back(s == "123" ? "e" : s);
    }
    const std::size_t n = perms.size();
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            std::array<int, 3> c{};
            for (int x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];  // a after b
            t[a][b] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
        }
    return GroupTable(std::move(names), std::move(t));
}

GroupTable GroupTable::builtin(std::string_view name) {
    auto number = [&](std::string_view digits) -> std::size_t {
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
        if (ec != std::errc() || ptr != digits.data() + digits.size() || v == 0)
            throw ParseError("unknown group '" + std::string(name) + "'");
        return v;
    };
    if (name == "S3") return symmetric3();
    if (name.size() > 1 && (name[0] == 'Z' || name[0] == 'C')) {
        std::string_view rest = name.substr(1);
        if (rest.rfind("/", 0) == 0) rest.remove_prefix(1);
        return cyclic(number(rest));
    }
    if (name.size() > 1 && name[0] == 'D') return dihedral(number(name.substr(1)));
    throw ParseError("unknown group '" + std::string(name) + "'");
}

GroupTable GroupTable::parse(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in{std::string(text)};
    for (std::string line; std::getline(in, line);) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> row;
        for (std::string tok; ls >> tok;) row.push_back(tok);
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("empty group table");
    std::vector<std::string> names = rows[0];
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < names.size(); ++i)
        if (!index.emplace(names[i], i).second) throw ParseError("duplicate element name '" + names[i] + "'");
    if (rows.size() != names.size() + 1) throw ParseError("group table needs one row per element");
    std::vector<std::vector<std::size_t>> t;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != names.size()) throw ParseError("row " + std::to_string(r) + " has wrong length");
        std::vector<std::size_t> row;
        for (const auto& tok : rows[r]) {
            auto it = index.find(tok);
            if (it == index.end()) throw ParseError("unknown element '" + tok + "'");
            row.push_back(it->second);
        }
        t.push_back(std::move(row));
    }
    return GroupTable(std::move(names), std::move(t));
}

std::string GroupTable::serialize() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < order(); ++i) os << (i ? " " : "") << names_[i];
    os << "\n";
    for (const auto& row : table_) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? " " : "") << names_[row[i]];
        os << "\n";
    }
    return os.str();
}

}  // namespace tubecalc
