#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace tubecalc {

/// Finite group given by its multiplication table. Element 0 need not be the
/// identity in the input; identity() finds it.
class GroupTable {
public:
    /// Validates closure, associativity, identity and inverses; throws NotAGroup.
    GroupTable(std::vector<std::string> names, std::vector<std::vector<std::size_t>> table);

    /// "Z<n>" or "C<n>" (cyclic of order n), "S3", "D<n>" (dihedral of order 2n).
    static GroupTable builtin(std::string_view name);
    static GroupTable cyclic(std::size_t n);
    static GroupTable dihedral(std::size_t n);
    static GroupTable symmetric3();

    /// Text form: first line element names, then one row of names per element.
    static GroupTable parse(std::string_view text);
    std::string serialize() const;

    std::size_t order() const { return names_.size(); }
    std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
    std::size_t identity() const { return identity_; }
    std::size_t inverse(std::size_t a) const { return inverse_[a]; }
    /// a^-1 x a
    std::size_t conjugate(std::size_t x, std::size_t a) const { return mul(mul(inverse(a), x), a); }
    const std::string& name(std::size_t a) const { return names_[a]; }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<std::vector<std::size_t>>& table() const { return table_; }

private:
    std::vector<std::string> names_;
    std::vector<std::vector<std::size_t>> table_;
    std::size_t identity_ = 0;
    std::vector<std::size_t> inverse_;
};

}  // namespace tubecalc
