#pragma once

// W (.) S: sums w_1 g_1 + ... + w_r g_r over r-term subsequences of an
// integer weight sequence W and a group sequence S matched bijectively,
// r = min(|W|, |S|).

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "wodot/group.hpp"
#include "wodot/limits.hpp"
#include "wodot/sequence.hpp"

namespace wodot {

class WeightSeq {
public:
    WeightSeq() = default;
    WeightSeq(std::initializer_list<std::int64_t> ws) {
        for (auto w : ws) add(w);
    }
    explicit WeightSeq(const std::vector<std::int64_t>& ws) {
        for (auto w : ws) add(w);
    }

    // (start)(start+1)...(start+len-1)
    static WeightSeq run(std::int64_t start, std::uint64_t len) {
        WeightSeq w;
        for (std::uint64_t i = 0; i < len; ++i) w.add(start + static_cast<std::int64_t>(i));
        return w;
    }

    // (0)(1)...(len-1)
    static WeightSeq run(std::uint64_t len) { return run(0, len); }

    void add(std::int64_t w, std::uint64_t k = 1) {
        if (k) mult_[w] += k;
    }

    std::uint64_t length() const noexcept {
        std::uint64_t l = 0;
        for (const auto& [_, k] : mult_) l += k;
        return l;
    }

    std::int64_t sum() const noexcept {
        std::int64_t s = 0;
        for (const auto& [w, k] : mult_) s += w * static_cast<std::int64_t>(k);
        return s;
    }

    const std::map<std::int64_t, std::uint64_t>& counts() const noexcept { return mult_; }

    std::vector<std::int64_t> values() const {
        std::vector<std::int64_t> out;
        for (const auto& [w, k] : mult_)
            for (std::uint64_t j = 0; j < k; ++j) out.push_back(w);
        return out;
    }

    std::string to_string() const {
        std::string s;
        for (const auto& [w, k] : mult_) {
            s += "(" + std::to_string(w) + ")";
            if (k > 1) s += "^" + std::to_string(k);
        }
        return s.empty() ? "1" : s;
    }

    friend bool operator==(const WeightSeq&, const WeightSeq&) = default;

private:
    std::map<std::int64_t, std::uint64_t> mult_;
};

// W + w
inline WeightSeq shift_weights(const WeightSeq& ws, std::int64_t w) {
    WeightSeq out;
    for (const auto& [v, k] : ws.counts()) out.add(v + w, k);
    return out;
}

// Appends k zero terms: S 0^k.
inline Sequence pad_zeros(const Sequence& s, std::uint64_t k) {
    Sequence out = s;
    if (k) out.add(s.group().zero(), k);
    return out;
}

inline WeightSeq pad_zeros(const WeightSeq& ws, std::uint64_t k) {
    WeightSeq out = ws;
    out.add(0, k);
    return out;
}

namespace detail {

// Assignment DP shared by both orientations. One side is "placed": item j
// has multiplicity mult[j] and a lookup table mapping an atom-sum to the
// group element it contributes. The other side is the "pool": atom i is
// available cap[i] times. Placing item j takes a size-mult[j] sub-multiset
// of the unused pool and contributes lookup[j][sum of the taken atoms].
// State = usage count per pool atom, in mixed radix.
struct PlaceProblem {
    std::vector<std::uint64_t> atom;
    std::vector<std::uint64_t> cap;
    std::vector<std::vector<std::uint64_t>> lookup;
    std::vector<std::uint64_t> mult;
};

inline long double state_count(const std::vector<std::uint64_t>& caps) {
    long double c = 1;
    for (auto k : caps) c *= static_cast<long double>(k + 1);
    return c;
}

template <typename AtomAdd>
Bitset place_dp(const Group& g, const PlaceProblem& pr, AtomAdd atom_add, const Limits& lim) {
    const auto order = g.order();
    const std::size_t p = pr.atom.size();
    if (state_count(pr.cap) > static_cast<long double>(std::uint64_t{1} << lim.mask_bits))
        throw BudgetExceeded("weighted sumset DP needs more than 2^" + std::to_string(lim.mask_bits) + " states");
    std::vector<std::uint64_t> radix(p);
    std::uint64_t states = 1;
    for (std::size_t i = 0; i < p; ++i) {
        radix[i] = states;
        states *= pr.cap[i] + 1;
    }
    const std::size_t words = (order + 63) / 64;

    std::vector<std::uint64_t> dp(states * words, 0);
    auto row = [&](std::uint64_t st) { return dp.data() + st * words; };
    row(0)[0] = 1;  // index 0 is the identity

    std::vector<std::uint64_t> frontier{0};
    std::vector<char> queued(states, 0);
    std::vector<std::uint64_t> used(p);

    for (std::size_t j = 0; j < pr.mult.size(); ++j) {
        const auto& lookup = pr.lookup[j];
        std::vector<std::uint64_t> next;
        for (const auto st : frontier) {
            std::uint64_t rem = st;
            for (std::size_t i = p; i-- > 0;) {
                used[i] = rem / radix[i];
                rem %= radix[i];
            }
            const std::uint64_t* src = row(st);

            auto emit = [&](std::uint64_t delta, std::uint64_t atom_sum) {
                const auto dst_state = st + delta;
                std::uint64_t* dst = row(dst_state);
                const auto shift = lookup[atom_sum];
                for (std::size_t wi = 0; wi < words; ++wi) {
                    std::uint64_t bits = src[wi];
                    while (bits) {
                        const auto x = wi * 64 + static_cast<std::uint64_t>(std::countr_zero(bits));
                        const auto y = g.add_index(x, shift);
                        dst[y >> 6] |= std::uint64_t{1} << (y & 63);
                        bits &= bits - 1;
                    }
                }
                if (!queued[dst_state]) {
                    queued[dst_state] = 1;
                    next.push_back(dst_state);
                }
            };
            // Distribute `left` picks over atoms i.. within remaining capacity.
            auto rec = [&](auto&& self, std::size_t i, std::uint64_t left, std::uint64_t delta,
                           std::uint64_t atom_sum) -> void {
                if (left == 0) {
                    emit(delta, atom_sum);
                    return;
                }
                if (i == p) return;
                const auto avail = std::min(pr.cap[i] - used[i], left);
                std::uint64_t acc = atom_sum;
                for (std::uint64_t t = 0; t <= avail; ++t) {
                    self(self, i + 1, left - t, delta + t * radix[i], acc);
                    acc = atom_add(acc, pr.atom[i]);
                }
            };
            rec(rec, 0, pr.mult[j], 0, 0);
        }
        frontier = std::move(next);
        for (auto st : frontier) queued[st] = 0;
    }

    Bitset out(order);
    if (!frontier.empty()) {
        const std::uint64_t* fin = row(states - 1);
        for (std::size_t wi = 0; wi < words; ++wi) out.words()[wi] = fin[wi];
    }
    return out;
}

// Both sequences already padded to the same length. Places whichever side
// leaves the smaller pool state space.
inline Bitset odot_equal_length(const WeightSeq& ws, const Sequence& s, const Limits& lim) {
    const auto& g = s.group();
    const auto exp = g.exponent();

    std::vector<std::uint64_t> wcap, scap;
    for (const auto& [w, k] : ws.counts()) wcap.push_back(k);
    for (const auto& [e, k] : s.counts()) scap.push_back(k);

    PlaceProblem pr;
    if (state_count(wcap) <= state_count(scap)) {
        // Terms placed into the weight pool; atoms are weights mod exp(G).
        for (const auto& [w, k] : ws.counts()) pr.atom.push_back(static_cast<std::uint64_t>(mod(w, static_cast<std::int64_t>(exp))));
        pr.cap = std::move(wcap);
        for (const auto& [e, v] : s.counts()) {
            std::vector<std::uint64_t> multiple(exp, 0);
            for (std::uint64_t t = 1; t < exp; ++t) multiple[t] = g.add_index(multiple[t - 1], e);
            pr.lookup.push_back(std::move(multiple));
            pr.mult.push_back(v);
        }
        return place_dp(g, pr, [exp](std::uint64_t a, std::uint64_t b) { return (a + b) % exp; }, lim);
    }
    // Weights placed into the term pool; atoms are group elements.
    for (const auto& [e, k] : s.counts()) pr.atom.push_back(e);
    pr.cap = std::move(scap);
    for (const auto& [w, k] : ws.counts()) {
        std::vector<std::uint64_t> times(g.order());
        for (std::uint64_t x = 0; x < g.order(); ++x) times[x] = g.mul_index(w, x);
        pr.lookup.push_back(std::move(times));
        pr.mult.push_back(k);
    }
    return place_dp(g, pr, [&g](std::uint64_t a, std::uint64_t b) { return g.add_index(a, b); }, lim);
}

} // namespace detail

// W (.) S via zero-padding both sides to max(|W|, |S|) and an assignment
// DP over usage states. An empty pairing (r = 0) yields {0}.
inline ElementSet odot(const WeightSeq& ws, const Sequence& s, const Limits& lim = default_limits) {
    const auto lw = ws.length();
    const auto ls = s.length();
    const auto len = std::max(lw, ls);
    const auto r = std::min(lw, ls);
    ElementSet out(s.group());
    if (r == 0) {
        out.insert_index(0);
        return out;
    }
    const auto wp = pad_zeros(ws, len - lw);
    const auto sp = pad_zeros(s, len - ls);
    return ElementSet(s.group(), detail::odot_equal_length(wp, sp, lim));
}

// W (.) S straight from the definition: every choice of r terms on the
// longer side and every bijection with the shorter side. Coordinates are
// accumulated directly, independent of the element-index tables.
inline ElementSet odot_naive(const WeightSeq& ws, const Sequence& s, const Limits& lim = default_limits) {
    const auto& g = s.group();
    const auto weights = ws.values();
    std::vector<std::vector<std::int64_t>> terms;
    for (const auto& e : s.terms()) terms.push_back(e.coords());
    const std::size_t r = std::min(weights.size(), terms.size());

    ElementSet out(g);
    if (r == 0) {
        out.insert(g.zero());
        return out;
    }
    if (static_cast<int>(r) > lim.perm_oracle_r)
        throw BudgetExceeded("permutation oracle limited to r <= " + std::to_string(lim.perm_oracle_r) +
                             ", got r = " + std::to_string(r));

    const auto& mod = g.moduli();
    const std::size_t k = mod.size();
    const bool weights_short = weights.size() <= terms.size();
    const std::size_t big = weights_short ? terms.size() : weights.size();

    // Short side index i is matched with long side index pick[i].
    std::vector<char> taken(big, 0);
    std::vector<std::vector<std::int64_t>> acc(r + 1, std::vector<std::int64_t>(k, 0));
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == r) {
            out.insert(g.element(acc[r]));
            return;
        }
        for (std::size_t j = 0; j < big; ++j) {
            if (taken[j]) continue;
            taken[j] = 1;
            const std::int64_t w = weights_short ? weights[i] : weights[j];
            const auto& t = weights_short ? terms[j] : terms[i];
            for (std::size_t c = 0; c < k; ++c)
                acc[i + 1][c] = detail::mod(acc[i][c] + detail::mod(w, mod[c]) * t[c], mod[c]);
            self(self, i + 1);
            taken[j] = 0;
        }
    };
    rec(rec, 0);
    return out;
}

// (W + w) (.) S == W (.) S + w*sigma(S), asserted for |W| >= |S|.
inline bool check_weight_shift(const WeightSeq& ws, const Sequence& s, std::int64_t w,
                               const Limits& lim = default_limits) {
    if (ws.length() < s.length())
        throw PreconditionError("weight-shift identity needs |W| >= |S|");
    const auto lhs = odot(shift_weights(ws, w), s, lim);
    const auto rhs = odot(ws, s, lim).translated(scalar_mul(w, sigma(s)));
    return lhs == rhs;
}

// W (.) (S + g) == W (.) S + sigma(W)*g, asserted for |S| >= |W|.
inline bool check_term_shift(const WeightSeq& ws, const Sequence& s, const Element& g,
                             const Limits& lim = default_limits) {
    if (s.length() < ws.length())
        throw PreconditionError("term-shift identity needs |S| >= |W|");
    const auto lhs = odot(ws, translate(g, s), lim);
    const auto rhs = odot(ws, s, lim).translated(scalar_mul(ws.sum(), g));
    return lhs == rhs;
}

} // namespace wodot
