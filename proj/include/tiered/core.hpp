#pragma once

// Index arithmetic for the tier tree: per-level capacities, circular-shift
// wrapping, child selection and the left-to-right level-by-level node
// numbering used by the flat storage layouts. Everything here is pure
// arithmetic over a TierConfig; no storage is touched.

#include <bit>
#include <cassert>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tiered {

// Node address in the tier tree. depth 0 is the root, depth tiers()-1 the
// leaf level; index counts nodes left to right within a level.
struct NodeCoord {
    uint32_t depth = 0;
    uint64_t index = 0;

    friend bool operator==(const NodeCoord&, const NodeCoord&) = default;
};

// (i + off) mod cap for i, off in [0, cap). Single conditional subtract; the
// non-negative remainder definition, no division.
inline uint64_t wrap(uint64_t i, uint64_t off, uint64_t cap) {
    uint64_t t = i + off;
    return t >= cap ? t - cap : t;
}

// (off - 1) mod cap as a non-negative remainder.
inline uint64_t wrap_dec(uint64_t off, uint64_t cap) {
    return off == 0 ? cap - 1 : off - 1;
}

inline uint64_t wrap_inc(uint64_t off, uint64_t cap) {
    uint64_t t = off + 1;
    return t == cap ? 0 : t;
}

// The indices i, (i+1) mod cap, ..., (i+m-1) mod cap in order. Diagnostic
// helper; hot paths use the two-segment form inline.
inline std::vector<uint64_t> circ_range(uint64_t i, uint64_t m, uint64_t cap) {
    assert(i < cap && m <= cap);
    std::vector<uint64_t> out;
    out.reserve(m);
    uint64_t p = i;
    for (uint64_t t = 0; t < m; ++t) {
        out.push_back(p);
        p = wrap_inc(p, cap);
    }
    return out;
}

// Tree shape: widths w_1..w_l, where w_1..w_{l-1} are out-degrees of the
// internal levels and w_l is the number of elements per leaf. Capacities and
// level sizes are precomputed, along with shift/mask data for levels whose
// child capacity is a power of two.
class TierConfig {
public:
    explicit TierConfig(std::vector<uint32_t> widths) : widths_(std::move(widths)) {
        const size_t l = widths_.size();
        if (l < 2) throw std::invalid_argument("tier config needs at least 2 tiers");
        for (uint32_t w : widths_)
            if (w < 2) throw std::invalid_argument("tier widths must be >= 2");

        caps_.assign(l, 0);
        caps_[l - 1] = widths_[l - 1];
        for (size_t d = l - 1; d-- > 0;) {
            uint64_t c = 0;
            if (__builtin_mul_overflow(caps_[d + 1], uint64_t{widths_[d]}, &c) ||
                c > (uint64_t{1} << 62))
                throw std::invalid_argument("tier config capacity overflows index type");
            caps_[d] = c;
        }

        level_size_.assign(l, 1);
        level_start_.assign(l, 0);
        for (size_t d = 1; d < l; ++d) {
            level_size_[d] = level_size_[d - 1] * widths_[d - 1];
            level_start_[d] = level_start_[d - 1] + level_size_[d - 1];
        }
        node_count_ = level_start_[l - 1] + level_size_[l - 1];

        levels_.resize(l - 1);
        for (size_t d = 0; d + 1 < l; ++d) {
            uint64_t cc = caps_[d + 1];
            Level& lv = levels_[d];
            lv.child_cap = cc;
            lv.pow2 = (cc & (cc - 1)) == 0;
            lv.shift = lv.pow2 ? static_cast<uint32_t>(std::__countr_zero(cc)) : 0;
            lv.mask = lv.pow2 ? cc - 1 : 0;
        }
    }

    // Parses the dash-separated notation, e.g. "64-64-64-512", leaf width last.
    static TierConfig parse(const std::string& s) {
        std::vector<uint32_t> ws;
        size_t pos = 0;
        while (pos <= s.size()) {
            size_t dash = s.find('-', pos);
            if (dash == std::string::npos) dash = s.size();
            unsigned long v = 0;
            try {
                size_t used = 0;
                v = std::stoul(s.substr(pos, dash - pos), &used);
                if (used != dash - pos) throw std::invalid_argument("");
            } catch (...) {
                throw std::invalid_argument("bad tier config string: \"" + s + "\"");
            }
            if (v > std::numeric_limits<uint32_t>::max())
                throw std::invalid_argument("tier width out of range in \"" + s + "\"");
            ws.push_back(static_cast<uint32_t>(v));
            if (dash == s.size()) break;
            pos = dash + 1;
        }
        return TierConfig(std::move(ws));
    }

    std::string str() const {
        std::string out;
        for (size_t i = 0; i < widths_.size(); ++i) {
            if (i) out += '-';
            out += std::to_string(widths_[i]);
        }
        return out;
    }

    uint32_t tiers() const { return static_cast<uint32_t>(widths_.size()); }
    const std::vector<uint32_t>& widths() const { return widths_; }

    // Out-degree of an internal node at the given depth.
    uint32_t degree(uint32_t depth) const {
        assert(depth + 1 < tiers());
        return widths_[depth];
    }
    uint32_t leaf_width() const { return widths_.back(); }
    uint32_t leaf_depth() const { return tiers() - 1; }

    // Elements a subtree rooted at this depth can hold; depth 0 is the whole
    // structure, the leaf level holds leaf_width() elements.
    uint64_t capacity_at(uint32_t depth) const {
        assert(depth < tiers());
        return caps_[depth];
    }
    uint64_t total_capacity() const { return caps_[0]; }
    uint64_t child_capacity(uint32_t depth) const { return capacity_at(depth + 1); }

    uint64_t level_size(uint32_t depth) const {
        assert(depth < tiers());
        return level_size_[depth];
    }
    uint64_t level_start(uint32_t depth) const {
        assert(depth < tiers());
        return level_start_[depth];
    }
    uint64_t node_count() const { return node_count_; }
    uint64_t leaf_count() const { return level_size_[tiers() - 1]; }
    uint64_t internal_count() const { return level_start_[tiers() - 1]; }

    // Position of a node in level-by-level left-to-right order, root first.
    uint64_t offset_slot(NodeCoord c) const {
        assert(c.depth < tiers() && c.index < level_size_[c.depth]);
        return level_start_[c.depth] + c.index;
    }
    uint64_t leaf_ordinal(NodeCoord c) const {
        assert(c.depth == leaf_depth());
        return c.index;
    }
    NodeCoord child_coord(NodeCoord c, uint64_t k) const {
        assert(c.depth + 1 < tiers() && k < widths_[c.depth]);
        return NodeCoord{c.depth + 1, c.index * widths_[c.depth] + k};
    }
    NodeCoord leaf_coord(uint64_t ordinal) const { return NodeCoord{leaf_depth(), ordinal}; }

    // (child ordinal, index within the child) for a post-rotation index at
    // this depth; shift/mask when the child capacity is a power of two.
    std::pair<uint64_t, uint64_t> split_child(uint64_t i_prime, uint32_t depth) const {
        const Level& lv = levels_[depth];
        if (lv.pow2) return {i_prime >> lv.shift, i_prime & lv.mask};
        return {i_prime / lv.child_cap, i_prime % lv.child_cap};
    }

    friend bool operator==(const TierConfig& a, const TierConfig& b) {
        return a.widths_ == b.widths_;
    }

private:
    struct Level {
        uint64_t child_cap = 0;
        uint64_t mask = 0;
        uint32_t shift = 0;
        bool pow2 = false;
    };

    std::vector<uint32_t> widths_;
    std::vector<uint64_t> caps_;
    std::vector<uint64_t> level_size_;
    std::vector<uint64_t> level_start_;
    std::vector<Level> levels_;
    uint64_t node_count_ = 0;
};

inline std::pair<uint64_t, uint64_t> child_of(uint64_t i_prime, const TierConfig& cfg,
                                              uint32_t depth) {
    assert(depth + 1 < cfg.tiers() && i_prime < cfg.capacity_at(depth));
    return cfg.split_child(i_prime, depth);
}

// The position stream used by traces and benchmarks: a 64-bit multiplicative
// LCG (Knuth's constants), reduced mod the requested bound. Deterministic by
// seed and cheap enough not to dominate timed loops.
struct Lcg {
    static constexpr uint64_t kMul = 6364136223846793005ULL;
    static constexpr uint64_t kInc = 1442695040888963407ULL;

    uint64_t state = 1;

    explicit Lcg(uint64_t seed = 1) : state(seed) {}

    uint64_t next() {
        state = state * kMul + kInc;
        return state;
    }
    uint64_t below(uint64_t bound) {
        assert(bound > 0);
        return next() % bound;
    }
};

}  // namespace tiered
