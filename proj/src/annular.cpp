#include "tubecalc/annular.hpp"

#include "tubecalc/error.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace tubecalc::annular {

namespace {

unsigned mask_of(const Block& b) {
    unsigned m = 0;
    for (int i = b.lo; i <= b.hi; ++i) m |= 1u << (i - 1);
    return m;
}

Block block_of(unsigned mask) {
    Block b;
    b.lo = __builtin_ctz(mask) + 1;
    b.hi = 32 - __builtin_clz(mask);
    return b;
}

std::size_t block_index(int degree, const Block& b) {
    const auto& classes = block_classes(degree);
    auto it = std::lower_bound(classes.begin(), classes.end(), b);
    if (it == classes.end() || *it != b)
        throw Error("block [" + std::to_string(b.lo) + "," + std::to_string(b.hi) + "] is not valid in degree " +
                    std::to_string(degree));
    return static_cast<std::size_t>(it - classes.begin());
}

void check_degree(int degree) {
    if (degree > kMaxDegree) throw UnsupportedDegree(degree);
    if (degree < 0) throw Error("negative chain degree");
}

std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

const std::vector<Block>& block_classes(int degree) {
    static const std::vector<std::vector<Block>> table = [] {
        std::vector<std::vector<Block>> t(kMaxDegree + 1);
        for (int k = 0; k <= kMaxDegree; ++k)
            for (int lo = 1; lo <= k; ++lo)
                for (int hi = lo; hi <= k; ++hi) t[k].push_back({lo, hi});
        return t;
    }();
    check_degree(degree);
    return table[static_cast<std::size_t>(degree)];
}

CircleDiagram::CircleDiagram(int degree, std::optional<bool> shading) {
    check_degree(degree);
    degree_ = static_cast<std::int8_t>(degree);
    // the two shadings of the empty degree-0 diagram are identified
    if (shading && degree > 0) shading_ = *shading ? 1 : 0;
}

CircleDiagram::CircleDiagram(int degree, const std::vector<std::pair<Block, unsigned>>& blocks,
                             std::optional<bool> shading)
    : CircleDiagram(degree, shading) {
    for (const auto& [b, m] : blocks) {
        if (m == 0) continue;
        const std::size_t i = block_index(degree, b);
        if (mult_[i] + m > 0xffffu) throw Error("circle multiplicity too large");
        mult_[i] = static_cast<std::uint16_t>(mult_[i] + m);
    }
    if (degree == 3 && multiplicity({1, 2}) > 0 && multiplicity({2, 3}) > 0)
        throw Error("blocks [1,2] and [2,3] cross");
}

unsigned CircleDiagram::multiplicity(const Block& b) const {
    const auto& classes = block_classes(degree_);
    auto it = std::lower_bound(classes.begin(), classes.end(), b);
    if (it == classes.end() || *it != b) return 0;
    return mult_[static_cast<std::size_t>(it - classes.begin())];
}

std::vector<std::pair<Block, unsigned>> CircleDiagram::blocks() const {
    std::vector<std::pair<Block, unsigned>> out;
    const auto& classes = block_classes(degree_);
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (mult_[i]) out.emplace_back(classes[i], mult_[i]);
    return out;
}

unsigned CircleDiagram::total_circles() const {
    unsigned t = 0;
    for (auto m : mult_) t += m;
    return t;
}

std::string CircleDiagram::encode() const {
    std::ostringstream os;
    os << "k=" << int(degree_) << ";";
    for (const auto& [b, m] : blocks()) {
        os << " [" << b.lo;
        if (b.hi != b.lo) os << "," << b.hi;
        os << "]^" << m;
    }
    if (shading_ >= 0) os << "; s=" << int(shading_);
    return os.str();
}

CircleDiagram CircleDiagram::decode(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ';');) parts.push_back(part);
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t");
        if (a == std::string::npos) return std::string();
        return s.substr(a, s.find_last_not_of(" \t") - a + 1);
    };
    if (parts.empty()) throw ParseError("empty diagram encoding");
    const std::string head = trim(parts[0]);
    if (head.rfind("k=", 0) != 0) throw ParseError("diagram encoding must start with k=: '" + text + "'");
    int degree = 0;
    try {
        degree = std::stoi(head.substr(2));
    } catch (const std::exception&) {
        throw ParseError("bad degree in '" + text + "'");
    }
    check_degree(degree);
    std::optional<bool> shading;
    std::vector<std::pair<Block, unsigned>> blocks;
    for (std::size_t p = 1; p < parts.size(); ++p) {
        const std::string part = trim(parts[p]);
        if (part.empty()) continue;
        if (part.rfind("s=", 0) == 0) {
            if (part == "s=0") shading = false;
            else if (part == "s=1") shading = true;
            else throw ParseError("bad shading '" + part + "'");
            continue;
        }
        std::istringstream ts(part);
        for (std::string tok; ts >> tok;) {
            int lo = 0, hi = 0;
            unsigned mult = 1;
            char tail = 0;
            if (std::sscanf(tok.c_str(), "[%d,%d]^%u%c", &lo, &hi, &mult, &tail) == 3) {
            } else if (std::sscanf(tok.c_str(), "[%d]^%u%c", &lo, &mult, &tail) == 2) {
                hi = lo;
            } else if (tok.back() == ']' && std::sscanf(tok.c_str(), "[%d,%d]", &lo, &hi) == 2) {
                mult = 1;
            } else if (tok.back() == ']' && std::sscanf(tok.c_str(), "[%d]", &lo) == 1) {
                hi = lo;
                mult = 1;
            } else {
                throw ParseError("bad block token '" + tok + "'");
            }
            if (lo < 1 || hi < lo || hi > degree) throw ParseError("block out of range in '" + tok + "'");
            blocks.push_back({{lo, hi}, mult});
        }
    }
    try {
        return CircleDiagram(degree, blocks, shading);
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

CircleDiagram sigma(unsigned k, std::optional<bool> shading) { return CircleDiagram(1, {{{1, 1}, k}}, shading); }

CircleDiagram sigma2(unsigned a, unsigned b, unsigned c, std::optional<bool> shading) {
    return CircleDiagram(2, {{{1, 1}, a}, {{2, 2}, b}, {{1, 2}, c}}, shading);
}

ChainVector::ChainVector(const CircleDiagram& d, RatFunc coeff) : degree_(d.degree()) {
    if (!coeff.is_zero()) terms_.emplace(d, std::move(coeff));
}

RatFunc ChainVector::coefficient(const CircleDiagram& d) const {
    auto it = terms_.find(d);
    return it == terms_.end() ? RatFunc() : it->second;
}

void ChainVector::add(const CircleDiagram& d, const RatFunc& coeff) {
    if (d.degree() != degree_) throw DimensionMismatch("diagram degree differs from chain degree");
    if (coeff.is_zero()) return;
    auto [it, fresh] = terms_.emplace(d, coeff);
    if (fresh) return;
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
}

ChainVector& ChainVector::operator+=(const ChainVector& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) degree_ = o.degree_;
    for (const auto& [d, c] : o.terms_) add(d, c);
    return *this;
}

ChainVector& ChainVector::operator-=(const ChainVector& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) degree_ = o.degree_;
    for (const auto& [d, c] : o.terms_) add(d, -c);
    return *this;
}

ChainVector& ChainVector::operator*=(const RatFunc& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [d, c] : terms_) c *= s;
    return *this;
}

std::string ChainVector::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [d, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += "(" + c.to_string() + ") {" + d.encode() + "}";
    }
    return out;
}

std::vector<CircleDiagram> enumerate_diagrams(int degree, unsigned max_total, Mode mode) {
    check_degree(degree);
    const auto& classes = block_classes(degree);
    std::vector<CircleDiagram> out;
    std::vector<unsigned> mult(classes.size(), 0);
    auto emit = [&] {
        std::vector<std::pair<Block, unsigned>> blocks;
        for (std::size_t i = 0; i < classes.size(); ++i) blocks.emplace_back(classes[i], mult[i]);
        if (degree == 3 && mult[block_index(3, {1, 2})] && mult[block_index(3, {2, 3})]) return;
        if (mode == Mode::shaded && degree > 0) {
            out.emplace_back(degree, blocks, false);
            out.emplace_back(degree, blocks, true);
        } else {
            out.emplace_back(degree, blocks);
        }
    };
    auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
        if (i == classes.size()) {
            emit();
            return;
        }
        for (unsigned m = 0; m <= left; ++m) {
            mult[i] = m;
            self(self, i + 1, left - m);
        }
        mult[i] = 0;
    };
    rec(rec, 0, max_total);
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t count_diagrams(int degree, unsigned max_total, Mode mode) {
    check_degree(degree);
    const std::size_t t = max_total;
    std::size_t n = 1;
    switch (degree) {
    case 0: return 1;
    case 1: n = t + 1; break;
    case 2: n = binomial(t + 3, 3); break;
    case 3: n = binomial(t + 6, 6) - binomial(t + 4, 6); break;
    }
    return mode == Mode::shaded ? 2 * n : n;
}

ChainVector fill_puncture(const CircleDiagram& d, int j) {
    const int k = d.degree();
    check_degree(k);
    if (k == 0) throw Error("degree-0 diagrams have no puncture to fill");
    if (j < 0 || j > k) throw Error("puncture index " + std::to_string(j) + " out of range for degree " + std::to_string(k));

    unsigned deleted = 0;
    unsigned flips = 0;
    std::vector<std::pair<Block, unsigned>> out_blocks;
    const unsigned all = (1u << k) - 1;
    for (const auto& [b, m] : d.blocks()) {
        const unsigned mask = mask_of(b);
        unsigned out = 0;
        if (j < k) {
            const unsigned bit = 1u << j;
            if (mask == bit) {
                deleted += m;
                continue;
            }
            const unsigned low = mask & (bit - 1);
            const unsigned high = (mask >> (j + 1)) << j;
            out = low | high;
        } else {
            // q_k is promoted to infinity; circles around q_k flip to the other side
            const unsigned last = 1u << (k - 1);
            if (mask & last) flips += m;
            if (mask == all) {
                deleted += m;
                continue;
            }
            out = (mask & last) ? (all ^ mask) : mask;
        }
        out_blocks.emplace_back(block_of(out), m);
    }
    std::optional<bool> shading = d.shading();
    if (shading && j == k && (flips & 1u)) shading = !*shading;
    CircleDiagram result(k - 1, out_blocks, shading);
    return ChainVector(result, RatFunc(IntPoly::monomial(1, deleted)));
}

ChainVector boundary(const CircleDiagram& d) {
    ChainVector out(d.degree() - 1);
    for (int j = 0; j <= d.degree(); ++j) {
        ChainVector f = fill_puncture(d, j);
        if (j % 2) out -= f;
        else out += f;
    }
    return out;
}

ChainVector boundary(const ChainVector& v) {
    ChainVector out(v.degree() - 1);
    for (const auto& [d, c] : v.terms()) out += c * boundary(d);
    return out;
}

SparseMat boundary_matrix(int degree, unsigned domain_total, unsigned codomain_total, Mode mode) {
    check_degree(degree);
    if (degree < 1) throw Error("boundary_matrix needs degree >= 1");
    const auto domain = enumerate_diagrams(degree, domain_total, mode);
    const DiagramIndex rows(enumerate_diagrams(degree - 1, codomain_total, mode));
    SparseMat m(rows.size(), domain.size());
    for (std::size_t c = 0; c < domain.size(); ++c) {
        const ChainVector b = boundary(domain[c]);
        for (const auto& [d, coeff] : b.terms()) {
            auto r = rows.find(d);
            if (!r) throw DimensionMismatch("boundary term " + d.encode() + " lies outside the codomain window");
            m.set(*r, c, coeff);
        }
    }
    return m;
}

DiagramIndex::DiagramIndex(std::vector<CircleDiagram> basis) : basis_(std::move(basis)) {
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if (!index_.emplace(basis_[i], i).second) throw Error("duplicate diagram " + basis_[i].encode());
}

std::optional<std::size_t> DiagramIndex::find(const CircleDiagram& d) const {
    auto it = index_.find(d);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<RatFunc> DiagramIndex::coordinates(const ChainVector& v) const {
    std::vector<RatFunc> out(basis_.size());
    for (const auto& [d, c] : v.terms()) {
        auto i = find(d);
        if (!i) throw DimensionMismatch("diagram " + d.encode() + " is outside the basis");
        out[*i] = c;
    }
    return out;
}

ChainVector DiagramIndex::vector(const std::vector<RatFunc>& coords, int degree) const {
    if (coords.size() != basis_.size()) throw DimensionMismatch("coordinate vector has wrong length");
    ChainVector out(degree);
    for (std::size_t i = 0; i < coords.size(); ++i) out.add(basis_[i], coords[i]);
    return out;
}

}  // namespace tubecalc::annular
