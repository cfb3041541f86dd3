#include "akg/multi_index.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace akg {

int popcount(Mask m) { return __builtin_popcount(m); }

std::vector<int> mask_elements(Mask m) {
    std::vector<int> e;
    for (int i = 0; m; ++i, m >>= 1)
        if (m & 1u) e.push_back(i);
    return e;
}

Mask mask_from(const std::vector<int>& elems) {
    Mask m = 0;
    for (int e : elems) m |= (Mask(1) << e);
    return m;
}

int merge_sign(Mask a, Mask b) {
    if (a & b) return 0;
    // For each element of b, count the elements of a above it.
    int swaps = 0;
    for (Mask bb = b; bb;) {
        int i = __builtin_ctz(bb);
        bb &= bb - 1;
        swaps += popcount(a >> (i + 1));
    }
    return (swaps % 2 == 0) ? 1 : -1;
}

namespace {

// Build-outside-the-lock caching: tables may be constructed twice under
// contention, but are only published once.
template <class Key, class Value, class Builder>
const Value& cached(std::map<Key, Value>& cache, std::mutex& mu, const Key& key, Builder build) {
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    Value v = build();
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, std::move(v)).first->second;
}

}  // namespace

SubsetTable::SubsetTable(int dim, int k) {
    if (k < 0 || k > dim) throw std::invalid_argument("SubsetTable: degree out of range");
    rank_.assign(std::size_t(1) << dim, -1);
    // Lexicographic enumeration of increasing tuples.
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        Mask m = 0;
        for (int i : idx) m |= (Mask(1) << i);
        rank_[m] = int(masks_.size());
        masks_.push_back(m);
        if (k == 0) break;
        int a = k - 1;
        while (a >= 0 && idx[a] == dim - k + a) --a;
        if (a < 0) break;
        ++idx[a];
        for (int i = a + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
}

const SubsetTable& SubsetTable::get(int dim, int k) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, SubsetTable*> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(dim, k);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, new SubsetTable(dim, k)).first;
    return *it->second;
}

const std::vector<WedgeEntry>& wedge_table(int dim, int p, int q) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, int>, std::vector<WedgeEntry>> cache;
    return cached(cache, mu, std::make_tuple(dim, p, q), [&] {
        const SubsetTable& ta = SubsetTable::get(dim, p);
        const SubsetTable& tb = SubsetTable::get(dim, q);
        const SubsetTable& to = SubsetTable::get(dim, p + q);
        std::vector<WedgeEntry> tab;
        for (int ia = 0; ia < ta.count(); ++ia)
            for (int ib = 0; ib < tb.count(); ++ib) {
                int s = merge_sign(ta.mask(ia), tb.mask(ib));
                if (s == 0) continue;
                tab.push_back({to.rank(ta.mask(ia) | tb.mask(ib)), ia, ib, double(s)});
            }
        return tab;
    });
}

const std::vector<DerivEntry>& deriv_table(int dim, int k) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<DerivEntry>> cache;
    return cached(cache, mu, std::make_pair(dim, k), [&] {
        const SubsetTable& ti = SubsetTable::get(dim, k);
        const SubsetTable& to = SubsetTable::get(dim, k + 1);
        std::vector<DerivEntry> tab;
        for (int i = 0; i < ti.count(); ++i) {
            Mask m = ti.mask(i);
            for (int axis = 0; axis < dim; ++axis) {
                Mask am = Mask(1) << axis;
                int s = merge_sign(am, m);
                if (s == 0) continue;
                tab.push_back({to.rank(m | am), i, axis, double(s)});
            }
        }
        return tab;
    });
}

const std::vector<ContractEntry>& dual_lefschetz_table(int dim, int k) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<ContractEntry>> cache;
    return cached(cache, mu, std::make_pair(dim, k), [&] {
        const SubsetTable& ti = SubsetTable::get(dim, k);
        const SubsetTable& to = SubsetTable::get(dim, k - 2);
        std::vector<ContractEntry> tab;
        for (int i = 0; i < ti.count(); ++i) {
            Mask m = ti.mask(i);
            auto elems = mask_elements(m);
            for (int j = 0; 2 * j + 1 < dim; ++j) {
                Mask pair = (Mask(1) << (2 * j)) | (Mask(1) << (2 * j + 1));
                if ((m & pair) != pair) continue;
                // positions (1-based) of 2j and 2j+1 within the sorted tuple
                int s_pos = 0, t_pos = 0;
                for (int e = 0; e < int(elems.size()); ++e) {
                    if (elems[e] == 2 * j) s_pos = e + 1;
                    if (elems[e] == 2 * j + 1) t_pos = e + 1;
                }
                // iota_{e_{2j+1}} iota_{e_{2j}} dx^I = (-1)^{s+t+1} dx^{I - pair}
                double sgn = ((s_pos + t_pos + 1) % 2 == 0) ? 1.0 : -1.0;
                tab.push_back({to.rank(m & ~pair), i, sgn});
            }
        }
        return tab;
    });
}

const std::vector<DerivationEntry>& derivation_table(int dim, int k) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<DerivationEntry>> cache;
    return cached(cache, mu, std::make_pair(dim, k), [&] {
        const SubsetTable& t = SubsetTable::get(dim, k);
        std::vector<DerivationEntry> tab;
        for (int i = 0; i < t.count(); ++i) {
            auto elems = mask_elements(t.mask(i));
            for (int slot = 0; slot < k; ++slot) {
                int src = elems[slot];
                Mask rest = t.mask(i) & ~(Mask(1) << src);
                for (int r = 0; r < dim; ++r) {
                    if (rest & (Mask(1) << r)) continue;
                    // target position (1-based) of r among rest
                    int p = popcount(rest & ((Mask(1) << r) - 1)) + 1;
                    double sgn = ((slot + 1 - p) % 2 == 0) ? 1.0 : -1.0;
                    tab.push_back({t.rank(rest | (Mask(1) << r)), i, src, r, sgn});
                }
            }
        }
        return tab;
    });
}

const std::vector<CompoundEntry>& compound_table(int dim, int k) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<CompoundEntry>> cache;
    return cached(cache, mu, std::make_pair(dim, k), [&] {
        const SubsetTable& t = SubsetTable::get(dim, k);
        std::vector<CompoundEntry> tab;
        for (int out = 0; out < t.count(); ++out) {
            auto rows = mask_elements(t.mask(out));
            for (int in = 0; in < t.count(); ++in) {
                auto cols = mask_elements(t.mask(in));
                CompoundEntry e;
                e.out = out;
                e.in = in;
                e.pos.reserve(std::size_t(k) * k);
                for (int a = 0; a < k; ++a)
                    for (int b = 0; b < k; ++b) e.pos.push_back(rows[a] * dim + cols[b]);
                tab.push_back(std::move(e));
            }
        }
        return tab;
    });
}

double complement_sign(int dim, Mask m) {
    Mask full = (Mask(1) << dim) - 1;
    return double(merge_sign(m, full & ~m));
}

}  // namespace akg
