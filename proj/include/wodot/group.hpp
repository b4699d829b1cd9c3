#pragma once

// Finite abelian groups C_{n1} + ... + C_{nk} as residue vectors, element
// sets stored as bitsets over a lexicographic element index, and the
// subgroup machinery built on them: span, star-span, stabilizer, sumset and
// coset decomposition.

#include <compare>
#include <cstdint>
#include <deque>
#include <initializer_list>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "wodot/detail/bitset.hpp"
#include "wodot/error.hpp"

namespace wodot {

namespace detail {

struct GroupData {
    std::vector<std::int64_t> moduli;
    std::vector<std::uint64_t> strides;  // stride of the last coordinate is 1
    std::uint64_t order = 1;
    std::uint64_t exponent = 1;
    std::vector<std::uint32_t> add_table;  // order*order, only for small groups
    std::vector<std::uint32_t> neg_table;
};

inline constexpr std::uint64_t kAddTableMaxOrder = 256;

inline std::int64_t mod(std::int64_t a, std::int64_t n) noexcept {
    const std::int64_t r = a % n;
    return r < 0 ? r + n : r;
}

} // namespace detail

// Largest order for which element sets (bitsets) can be materialized.
inline constexpr std::uint64_t kMaxSetOrder = std::uint64_t{1} << 24;

class Element;

class Group {
public:
    explicit Group(std::vector<std::int64_t> moduli) {
        if (moduli.empty()) throw PreconditionError("group needs at least one modulus");
        auto d = std::make_shared<detail::GroupData>();
        for (auto n : moduli) {
            if (n < 2) throw PreconditionError("every modulus must be >= 2, got " + std::to_string(n));
            if (d->order > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(n))
                throw PreconditionError("group order overflows 64 bits");
            d->order *= static_cast<std::uint64_t>(n);
            d->exponent = std::lcm(d->exponent, static_cast<std::uint64_t>(n));
        }
        d->moduli = std::move(moduli);
        d->strides.assign(d->moduli.size(), 1);
        for (std::size_t i = d->moduli.size() - 1; i > 0; --i)
            d->strides[i - 1] = d->strides[i] * static_cast<std::uint64_t>(d->moduli[i]);
        d_ = std::move(d);
        if (order() <= detail::kAddTableMaxOrder) build_tables();
    }

    Group(std::initializer_list<std::int64_t> moduli) : Group(std::vector<std::int64_t>(moduli)) {}

    static Group cyclic(std::int64_t n) { return Group(std::vector<std::int64_t>{n}); }

    const std::vector<std::int64_t>& moduli() const noexcept { return d_->moduli; }
    std::uint64_t order() const noexcept { return d_->order; }
    std::size_t rank() const noexcept { return d_->moduli.size(); }
    std::uint64_t exponent() const noexcept { return d_->exponent; }
    bool is_cyclic() const noexcept { return d_->exponent == d_->order; }

    Element zero() const;
    Element element(std::vector<std::int64_t> coords) const;
    Element at(std::uint64_t index) const;

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < rank(); ++i) {
            if (i) s += "+";
            s += "C" + std::to_string(moduli()[i]);
        }
        return s;
    }

    // Index-level arithmetic used by the enumeration kernels.
    std::uint64_t add_index(std::uint64_t a, std::uint64_t b) const noexcept {
        if (!d_->add_table.empty()) return d_->add_table[a * order() + b];
        std::uint64_t r = 0;
        for (std::size_t i = 0; i < rank(); ++i) {
            const auto n = static_cast<std::uint64_t>(d_->moduli[i]);
            const auto s = d_->strides[i];
            r += ((a / s) % n + (b / s) % n) % n * s;
        }
        return r;
    }

    std::uint64_t neg_index(std::uint64_t a) const noexcept {
        if (!d_->neg_table.empty()) return d_->neg_table[a];
        std::uint64_t r = 0;
        for (std::size_t i = 0; i < rank(); ++i) {
            const auto n = static_cast<std::uint64_t>(d_->moduli[i]);
            const auto s = d_->strides[i];
            r += (n - (a / s) % n) % n * s;
        }
        return r;
    }

    std::uint64_t mul_index(std::int64_t c, std::uint64_t a) const noexcept {
        std::uint64_t r = 0;
        for (std::size_t i = 0; i < rank(); ++i) {
            const auto n = d_->moduli[i];
            const auto s = d_->strides[i];
            const auto digit = static_cast<std::int64_t>((a / s) % static_cast<std::uint64_t>(n));
            const auto prod = static_cast<std::int64_t>(
                static_cast<__int128>(detail::mod(c, n)) * digit % n);
            r += static_cast<std::uint64_t>(prod) * s;
        }
        return r;
    }

    std::uint64_t index_of(const std::vector<std::int64_t>& canonical) const noexcept {
        std::uint64_t r = 0;
        for (std::size_t i = 0; i < rank(); ++i) r += static_cast<std::uint64_t>(canonical[i]) * d_->strides[i];
        return r;
    }

    friend bool operator==(const Group& a, const Group& b) noexcept {
        return a.d_ == b.d_ || a.d_->moduli == b.d_->moduli;
    }

private:
    void build_tables() {
        auto d = std::const_pointer_cast<detail::GroupData>(d_);
        const auto n = order();
        std::vector<std::uint32_t> add(n * n), neg(n);
        d->add_table.clear();
        d->neg_table.clear();
        for (std::uint64_t a = 0; a < n; ++a) {
            neg[a] = static_cast<std::uint32_t>(neg_index(a));
            for (std::uint64_t b = 0; b < n; ++b) add[a * n + b] = static_cast<std::uint32_t>(add_index(a, b));
        }
        d->add_table = std::move(add);
        d->neg_table = std::move(neg);
    }

    std::shared_ptr<const detail::GroupData> d_;
};

class Element {
public:
    Element(Group g, std::vector<std::int64_t> coords) : g_(std::move(g)), c_(std::move(coords)) {
        if (c_.size() != g_.rank())
            throw PreconditionError("element has " + std::to_string(c_.size()) + " coordinates, group " +
                                    g_.to_string() + " needs " + std::to_string(g_.rank()));
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = detail::mod(c_[i], g_.moduli()[i]);
    }

    const Group& group() const noexcept { return g_; }
    const std::vector<std::int64_t>& coords() const noexcept { return c_; }
    std::uint64_t index() const noexcept { return g_.index_of(c_); }

    bool is_zero() const noexcept {
        for (auto c : c_)
            if (c) return false;
        return true;
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(c_[i]);
        }
        return c_.size() == 1 ? s : "(" + s + ")";
    }

    friend bool operator==(const Element& a, const Element& b) noexcept { return a.g_ == b.g_ && a.c_ == b.c_; }
    friend std::strong_ordering operator<=>(const Element& a, const Element& b) noexcept {
        if (auto c = a.g_.moduli() <=> b.g_.moduli(); c != 0) return c;
        return a.c_ <=> b.c_;
    }

private:
    Group g_;
    std::vector<std::int64_t> c_;
};

inline Element Group::zero() const { return Element(*this, std::vector<std::int64_t>(rank(), 0)); }

inline Element Group::element(std::vector<std::int64_t> coords) const { return Element(*this, std::move(coords)); }

inline Element Group::at(std::uint64_t index) const {
    if (index >= order()) throw PreconditionError("element index out of range");
    std::vector<std::int64_t> c(rank());
    for (std::size_t i = 0; i < rank(); ++i)
        c[i] = static_cast<std::int64_t>((index / d_->strides[i]) % static_cast<std::uint64_t>(moduli()[i]));
    return Element(*this, std::move(c));
}

inline void require_same_group(const Group& a, const Group& b) {
    if (!(a == b)) throw PreconditionError("group mismatch: " + a.to_string() + " vs " + b.to_string());
}

inline Element add(const Element& a, const Element& b) {
    require_same_group(a.group(), b.group());
    std::vector<std::int64_t> c(a.coords().size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (a.coords()[i] + b.coords()[i]) % a.group().moduli()[i];
    return Element(a.group(), std::move(c));
}

inline Element neg(const Element& a) {
    std::vector<std::int64_t> c(a.coords().size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = -a.coords()[i];
    return Element(a.group(), std::move(c));
}

inline Element sub(const Element& a, const Element& b) { return add(a, neg(b)); }

// c*g with c reduced per coordinate modulus; c may be negative.
inline Element scalar_mul(std::int64_t c, const Element& g) {
    std::vector<std::int64_t> out(g.coords().size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto n = g.group().moduli()[i];
        out[i] = static_cast<std::int64_t>(static_cast<__int128>(detail::mod(c, n)) * g.coords()[i] % n);
    }
    return Element(g.group(), std::move(out));
}

inline std::uint64_t order_of(const Element& g) {
    std::uint64_t ord = 1;
    for (std::size_t i = 0; i < g.coords().size(); ++i) {
        const auto n = static_cast<std::uint64_t>(g.group().moduli()[i]);
        const auto c = static_cast<std::uint64_t>(g.coords()[i]);
        ord = std::lcm(ord, n / std::gcd(n, c));
    }
    return ord;
}

// A finite set of elements of one group.
class ElementSet {
public:
    explicit ElementSet(Group g) : g_(std::move(g)) {
        if (g_.order() > kMaxSetOrder)
            throw PreconditionError("group " + g_.to_string() + " too large for explicit element sets");
        bits_ = detail::Bitset(g_.order());
    }

    ElementSet(Group g, std::initializer_list<Element> elems) : ElementSet(std::move(g)) {
        for (const auto& e : elems) insert(e);
    }

    ElementSet(Group g, detail::Bitset bits) : g_(std::move(g)), bits_(std::move(bits)) {}

    static ElementSet whole(const Group& g) {
        ElementSet s(g);
        for (std::uint64_t i = 0; i < g.order(); ++i) s.bits_.set(i);
        return s;
    }

    static ElementSet from_indices(const Group& g, std::initializer_list<std::uint64_t> idx) {
        ElementSet s(g);
        for (auto i : idx) s.insert_index(i);
        return s;
    }

    const Group& group() const noexcept { return g_; }
    const detail::Bitset& bits() const noexcept { return bits_; }

    void insert(const Element& e) {
        require_same_group(g_, e.group());
        bits_.set(e.index());
    }
    void insert_index(std::uint64_t i) { bits_.set(i); }
    void erase(const Element& e) {
        require_same_group(g_, e.group());
        bits_.reset(e.index());
    }

    bool contains(const Element& e) const { return e.group() == g_ && bits_.test(e.index()); }
    bool contains_index(std::uint64_t i) const noexcept { return bits_.test(i); }

    std::size_t size() const noexcept { return bits_.count(); }
    bool empty() const noexcept { return bits_.none(); }
    bool is_whole() const noexcept { return bits_.all(); }

    std::vector<std::uint64_t> indices() const {
        std::vector<std::uint64_t> out;
        bits_.for_each([&](std::size_t i) { out.push_back(i); });
        return out;
    }

    // Members in lexicographic coordinate order.
    std::vector<Element> members() const {
        std::vector<Element> out;
        bits_.for_each([&](std::size_t i) { out.push_back(g_.at(i)); });
        return out;
    }

    bool is_subset_of(const ElementSet& o) const {
        require_same_group(g_, o.g_);
        return bits_.is_subset_of(o.bits_);
    }

    ElementSet translated(const Element& t) const {
        require_same_group(g_, t.group());
        ElementSet out(g_);
        const auto ti = t.index();
        bits_.for_each([&](std::size_t i) { out.bits_.set(g_.add_index(i, ti)); });
        return out;
    }

    ElementSet united(const ElementSet& o) const {
        require_same_group(g_, o.g_);
        ElementSet out = *this;
        out.bits_ |= o.bits_;
        return out;
    }

    std::string to_string() const {
        std::string s = "{";
        bool first = true;
        for (const auto& e : members()) {
            if (!first) s += ", ";
            s += e.to_string();
            first = false;
        }
        return s + "}";
    }

    friend bool operator==(const ElementSet& a, const ElementSet& b) noexcept {
        return a.g_ == b.g_ && a.bits_ == b.bits_;
    }

private:
    Group g_;
    detail::Bitset bits_;
};

inline ElementSet sumset(const ElementSet& a, const ElementSet& b) {
    require_same_group(a.group(), b.group());
    const auto& g = a.group();
    ElementSet out(g);
    const auto bi = b.indices();
    a.bits().for_each([&](std::size_t x) {
        for (auto y : bi) out.insert_index(g.add_index(x, y));
    });
    return out;
}

// Smallest subgroup containing A, by closure under addition (finite groups
// need no explicit negation).
inline ElementSet span(const ElementSet& a) {
    const auto& g = a.group();
    ElementSet out(g);
    out.insert_index(0);
    const auto gens = a.indices();
    std::deque<std::uint64_t> queue{0};
    while (!queue.empty()) {
        const auto x = queue.front();
        queue.pop_front();
        for (auto s : gens) {
            const auto y = g.add_index(x, s);
            if (!out.contains_index(y)) {
                out.insert_index(y);
                queue.push_back(y);
            }
        }
    }
    return out;
}

// <A>_* = <A - a> for any a in A.
inline ElementSet star_span(const ElementSet& a) {
    if (a.empty()) throw PreconditionError("star_span of the empty set");
    const auto& g = a.group();
    const auto na = g.neg_index(a.bits().first());
    ElementSet shifted(g);
    a.bits().for_each([&](std::size_t x) { shifted.insert_index(g.add_index(x, na)); });
    return span(shifted);
}

// H(A) = {g : g + A = A}.
inline ElementSet stabilizer(const ElementSet& a) {
    if (a.empty()) throw PreconditionError("stabilizer of the empty set");
    const auto& g = a.group();
    const auto members = a.indices();
    const auto na = g.neg_index(members.front());
    ElementSet out(g);
    // Every period t satisfies a0 + t in A, so t ranges over A - a0.
    for (auto x : members) {
        const auto t = g.add_index(x, na);
        bool ok = true;
        for (auto y : members) {
            if (!a.contains_index(g.add_index(y, t))) {
                ok = false;
                break;
            }
        }
        if (ok) out.insert_index(t);
    }
    return out;
}

inline bool is_subgroup(const ElementSet& h) {
    if (!h.contains_index(0)) return false;
    const auto& g = h.group();
    const auto m = h.indices();
    for (auto x : m)
        for (auto y : m)
            if (!h.contains_index(g.add_index(x, y))) return false;
    return true;
}

inline bool is_aperiodic(const ElementSet& a) { return stabilizer(a).size() == 1; }

namespace detail {

inline void require_subgroup(const ElementSet& h) {
    if (!is_subgroup(h)) throw PreconditionError("set " + h.to_string() + " is not a subgroup");
}

// Lexicographically least element of x + H.
inline std::uint64_t coset_rep(const Group& g, std::uint64_t x, const std::vector<std::uint64_t>& h) {
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    for (auto y : h) best = std::min(best, g.add_index(x, y));
    return best;
}

} // namespace detail

// Partition of A by H-cosets, keyed by canonical coset representative.
inline std::map<Element, ElementSet> coset_decompose(const ElementSet& a, const ElementSet& h) {
    require_same_group(a.group(), h.group());
    detail::require_subgroup(h);
    const auto& g = a.group();
    const auto hm = h.indices();
    std::map<std::uint64_t, ElementSet> by_index;
    a.bits().for_each([&](std::size_t x) {
        const auto rep = detail::coset_rep(g, x, hm);
        by_index.try_emplace(rep, g).first->second.insert_index(x);
    });
    std::map<Element, ElementSet> out;
    for (auto& [rep, cls] : by_index) out.emplace(g.at(rep), std::move(cls));
    return out;
}

// phi_H(A) realized as the set of canonical representatives.
inline ElementSet quotient_image(const ElementSet& a, const ElementSet& h) {
    require_same_group(a.group(), h.group());
    detail::require_subgroup(h);
    const auto& g = a.group();
    const auto hm = h.indices();
    ElementSet out(g);
    a.bits().for_each([&](std::size_t x) { out.insert_index(detail::coset_rep(g, x, hm)); });
    return out;
}

// Elements of order |G|; empty unless G is cyclic.
inline ElementSet generators(const Group& g) {
    ElementSet out(g);
    for (std::uint64_t i = 0; i < g.order(); ++i)
        if (order_of(g.at(i)) == g.order()) out.insert_index(i);
    return out;
}

} // namespace wodot
