#pragma once

// Sequences over G: finite unordered multisets of group elements, written
// multiplicatively g1 * ... * gl, with sums, translates, n-term subsequence
// sums and the zero-sum predicates.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "wodot/group.hpp"
#include "wodot/limits.hpp"

namespace wodot {

class Sequence {
public:
    explicit Sequence(Group g) : g_(std::move(g)) {}

    Sequence(Group g, std::initializer_list<std::pair<Element, std::uint64_t>> terms) : Sequence(std::move(g)) {
        for (const auto& [e, k] : terms) add(e, k);
    }

    static Sequence from_terms(const Group& g, const std::vector<Element>& terms) {
        Sequence s(g);
        for (const auto& e : terms) s.add(e);
        return s;
    }

    // Builds a sequence from (element index, multiplicity) pairs.
    static Sequence from_index_counts(const Group& g, const std::vector<std::pair<std::uint64_t, std::uint64_t>>& counts) {
        Sequence s(g);
        for (auto [i, k] : counts)
            if (k) s.mult_[i] += k;
        return s;
    }

    const Group& group() const noexcept { return g_; }

    void add(const Element& e, std::uint64_t k = 1) {
        require_same_group(g_, e.group());
        if (k) mult_[e.index()] += k;
    }

    // Removes one copy of e; e must be a term.
    void remove_one(const Element& e) {
        require_same_group(g_, e.group());
        auto it = mult_.find(e.index());
        if (it == mult_.end()) throw PreconditionError(e.to_string() + " is not a term of the sequence");
        if (--it->second == 0) mult_.erase(it);
    }

    std::uint64_t multiplicity(const Element& e) const {
        if (!(e.group() == g_)) return 0;
        auto it = mult_.find(e.index());
        return it == mult_.end() ? 0 : it->second;
    }

    std::uint64_t length() const noexcept {
        std::uint64_t l = 0;
        for (const auto& [_, k] : mult_) l += k;
        return l;
    }

    bool empty() const noexcept { return mult_.empty(); }

    // h(S)
    std::uint64_t max_multiplicity() const noexcept {
        std::uint64_t h = 0;
        for (const auto& [_, k] : mult_) h = std::max(h, k);
        return h;
    }

    ElementSet support() const {
        ElementSet s(g_);
        for (const auto& [i, _] : mult_) s.insert_index(i);
        return s;
    }

    // (element index, multiplicity) in increasing index order.
    const std::map<std::uint64_t, std::uint64_t>& counts() const noexcept { return mult_; }

    std::vector<std::pair<Element, std::uint64_t>> distinct_terms() const {
        std::vector<std::pair<Element, std::uint64_t>> out;
        for (const auto& [i, k] : mult_) out.emplace_back(g_.at(i), k);
        return out;
    }

    // Terms listed with repetition, in index order.
    std::vector<Element> terms() const {
        std::vector<Element> out;
        for (const auto& [i, k] : mult_)
            for (std::uint64_t j = 0; j < k; ++j) out.push_back(g_.at(i));
        return out;
    }

    // Number of sub-multiplicity vectors, prod (v_g + 1), saturating.
    std::uint64_t subsequence_count() const noexcept {
        std::uint64_t c = 1;
        for (const auto& [_, k] : mult_) {
            if (c > (std::uint64_t{1} << 62) / (k + 1)) return std::uint64_t{1} << 62;
            c *= k + 1;
        }
        return c;
    }

    std::string to_string() const {
        if (mult_.empty()) return "1";  // the empty sequence
        std::string s;
        for (const auto& [i, k] : mult_) {
            if (!s.empty()) s += " ";
            s += g_.at(i).to_string();
            if (k > 1) s += "^" + std::to_string(k);
        }
        return s;
    }

    friend bool operator==(const Sequence& a, const Sequence& b) noexcept {
        return a.g_ == b.g_ && a.mult_ == b.mult_;
    }

private:
    Group g_;
    std::map<std::uint64_t, std::uint64_t> mult_;
};

inline Element sigma(const Sequence& s) {
    const auto& g = s.group();
    std::uint64_t acc = 0;
    for (const auto& [i, k] : s.counts()) {
        const auto ki = static_cast<std::int64_t>(k % g.exponent());
        acc = g.add_index(acc, g.mul_index(ki, i));
    }
    return g.at(acc);
}

// g' + S
inline Sequence translate(const Element& gp, const Sequence& s) {
    require_same_group(gp.group(), s.group());
    const auto& g = s.group();
    const auto t = gp.index();
    std::vector<std::pair<std::uint64_t, std::uint64_t>> counts;
    for (const auto& [i, k] : s.counts()) counts.emplace_back(g.add_index(i, t), k);
    return Sequence::from_index_counts(g, counts);
}

namespace detail {

// reach[c] = set of sums of c-term subsequences, c in [0, max_len].
inline std::vector<Bitset> subsequence_sum_layers(const Sequence& s, std::uint64_t max_len) {
    const auto& g = s.group();
    const auto order = g.order();
    std::vector<Bitset> reach(max_len + 1, Bitset(order));
    reach[0].set(0);
    std::uint64_t seen = 0;
    for (const auto& [e, v] : s.counts()) {
        // multiples[t] = t*e
        std::vector<std::uint64_t> multiples(v + 1, 0);
        for (std::uint64_t t = 1; t <= v; ++t) multiples[t] = g.add_index(multiples[t - 1], e);
        const auto top = std::min(max_len, seen + v);
        for (std::uint64_t c = top + 1; c-- > 0;) {
            Bitset acc = reach[c];
            for (std::uint64_t t = 1; t <= v && t <= c; ++t) {
                if (c - t > seen) continue;
                reach[c - t].for_each([&](std::size_t x) { acc.set(g.add_index(x, multiples[t])); });
            }
            reach[c] = std::move(acc);
        }
        seen += v;
    }
    return reach;
}

} // namespace detail

// Sigma_n(S): sums of all n-term subsequences.
inline ElementSet sigma_n(const Sequence& s, std::uint64_t n) {
    if (n > s.length())
        throw PreconditionError("n = " + std::to_string(n) + " exceeds |S| = " + std::to_string(s.length()));
    auto layers = detail::subsequence_sum_layers(s, n);
    return ElementSet(s.group(), std::move(layers[n]));
}

// Sigma(S): sums of all nonempty subsequences.
inline ElementSet sigma_all(const Sequence& s) {
    const auto len = s.length();
    auto layers = detail::subsequence_sum_layers(s, len);
    ElementSet out(s.group());
    for (std::uint64_t c = 1; c <= len; ++c) out = out.united(ElementSet(s.group(), layers[c]));
    return out;
}

namespace detail {

// Visits every sub-multiplicity vector (except the empty one and, if
// skip_full, the full one) and reports whether any of them sums to zero.
inline bool has_zero_sum_subsequence(const Sequence& s, bool skip_full, const Limits& lim) {
    const auto count = s.subsequence_count();
    if (count > lim.enum_budget)
        throw BudgetExceeded("too large to verify: " + std::to_string(count) +
                             " subsequences exceed the enumeration budget of " + std::to_string(lim.enum_budget));
    const auto& g = s.group();
    std::vector<std::uint64_t> elem, cap;
    for (const auto& [e, v] : s.counts()) {
        elem.push_back(e);
        cap.push_back(v);
    }
    const std::size_t d = elem.size();
    std::vector<std::uint64_t> digit(d, 0);
    // partial[i] = sum of digit[j]*elem[j] for j >= i
    std::vector<std::uint64_t> partial(d + 1, 0);
    const auto full = count - 1;
    for (std::uint64_t step = 1; step < count; ++step) {
        // mixed-radix increment; recompute partial sums from the changed digit down
        std::size_t i = 0;
        while (digit[i] == cap[i]) {
            digit[i] = 0;
            ++i;
        }
        ++digit[i];
        for (std::size_t j = i + 1; j-- > 0;) {
            const auto term = g.mul_index(static_cast<std::int64_t>(digit[j] % g.exponent()), elem[j]);
            partial[j] = g.add_index(partial[j + 1], term);
        }
        if (skip_full && step == full) continue;
        if (partial[0] == 0) return true;
    }
    return false;
}

} // namespace detail

inline bool is_zero_sum(const Sequence& s) { return sigma(s).is_zero(); }

inline bool is_zero_sum_free(const Sequence& s, const Limits& lim = default_limits) {
    return !detail::has_zero_sum_subsequence(s, false, lim);
}

inline bool is_minimal_zero_sum(const Sequence& s, const Limits& lim = default_limits) {
    if (s.empty()) return false;
    if (!is_zero_sum(s)) return false;
    return !detail::has_zero_sum_subsequence(s, true, lim);
}

} // namespace wodot
