#include "rlub/order_relation.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace rlub {

namespace {

constexpr long long kMaxDepthTotal = 1'000'000;

void validate_pair(const IndexedPair& p, const PartialOrder& ord,
                   const char* which) {
    if (p.tau.empty())
        throw std::invalid_argument(std::string(which) + ": empty control sequence");
    if (p.tau.size() != p.lambda.size())
        throw std::invalid_argument(std::string(which) +
                                    ": control and depth sequences differ in length");
    for (int v : p.lambda)
        if (v < 0)
            throw std::invalid_argument(std::string(which) + ": negative depth entry");
    for (const Sym& t : p.tau)
        if (!ord.carrier.count(t))
            throw std::invalid_argument(std::string(which) + ": symbol '" + t +
                                        "' outside the order carrier");
}

void validate_sequence(const Word& tau, const PartialOrder& ord) {
    if (tau.empty()) throw std::invalid_argument("empty control sequence");
    for (const Sym& t : tau)
        if (!ord.carrier.count(t))
            throw std::invalid_argument("symbol '" + t +
                                        "' outside the order carrier");
}

}  // namespace

long long seq_sum(std::span<const int> lambda) {
    long long s = 0;
    for (int v : lambda) s += v;
    return s;
}

int seg_index(std::span<const int> lambda, long long i) {
    if (i < 1) throw std::out_of_range("seg_index: position must be >= 1");
    long long acc = 0;
    for (std::size_t j = 0; j < lambda.size(); ++j) {
        acc += lambda[j];
        if (acc >= i) return static_cast<int>(j) + 1;
    }
    throw std::out_of_range("seg_index: position exceeds the sequence total");
}

bool entries_in(std::span<const int> lambda, const Interval& mu) {
    for (int v : lambda)
        if (!mu.contains(v)) return false;
    return true;
}

std::vector<Division> div_enumerate(int n, long long m, const Interval& mu) {
    if (n < 1) throw std::invalid_argument("div_enumerate: need n >= 1");
    if (m < 0) throw std::invalid_argument("div_enumerate: need m >= 0");
    std::vector<Division> out;
    Division cur;
    cur.reserve(n);
    auto rec = [&](auto&& self, int left, long long rest) -> void {
        if (left == 0) {
            if (rest == 0) out.push_back(cur);
            return;
        }
        for (int v = mu.lo; v <= mu.hi; ++v) {
            long long next = rest - v;
            if (next < static_cast<long long>(left - 1) * mu.lo) break;
            if (next > static_cast<long long>(left - 1) * mu.hi) continue;
            cur.push_back(v);
            self(self, left - 1, next);
            cur.pop_back();
        }
    };
    rec(rec, n, m);
    return out;
}

bool relation_holds(const IndexedPair& p1, const IndexedPair& p2,
                    const GenerativeCondition& gc, const PartialOrder& ord) {
    validate_pair(p1, ord, "left pair");
    validate_pair(p2, ord, "right pair");
    const long long m = seq_sum(p1.lambda);
    if (m != seq_sum(p2.lambda)) return false;
    if (entries_in(p1.lambda, gc.mu_b) && !entries_in(p2.lambda, gc.mu_t))
        return false;
    // Segment-wise dominance; the covering symbol is constant between
    // boundaries, so walk both segmentations in lockstep.
    long long i = 1;
    std::size_t j1 = 0, j2 = 0;
    long long c1 = 0, c2 = 0;
    while (i <= m) {
        while (c1 < i) c1 += p1.lambda[j1++];
        while (c2 < i) c2 += p2.lambda[j2++];
        if (!ord.leq(p1.tau[j1 - 1], p2.tau[j2 - 1])) return false;
        i = std::min(c1, c2) + 1;
    }
    return true;
}

std::optional<Division> exists_witness(const IndexedPair& p1, const Word& tau2,
                                       const GenerativeCondition& gc,
                                       const PartialOrder& ord,
                                       bool positive_only) {
    validate_pair(p1, ord, "left pair");
    validate_sequence(tau2, ord);
    const long long m = seq_sum(p1.lambda);
    if (m > kMaxDepthTotal)
        throw std::invalid_argument("witness search: depth total too large");
    const int n2 = static_cast<int>(tau2.size());

    long long lo = positive_only ? 1 : 0;
    long long hi = m;
    if (entries_in(p1.lambda, gc.mu_b)) {
        lo = std::max<long long>(lo, gc.mu_t.lo);
        hi = std::min<long long>(hi, gc.mu_t.hi);
    }

    // Covering symbol of the left pair per position 1..m.
    std::vector<const Sym*> left(static_cast<std::size_t>(m) + 1, nullptr);
    {
        long long covered = 0;
        std::size_t j = 0;
        for (long long i = 1; i <= m; ++i) {
            while (covered < i) covered += p1.lambda[j++];
            left[i] = &p1.tau[j - 1];
        }
    }
    // run[j][i]: how many consecutive positions starting at i are dominated
    // by tau2[j].
    const std::size_t stride = static_cast<std::size_t>(m) + 2;
    std::vector<long long> run(static_cast<std::size_t>(n2) * stride, 0);
    for (int j = 0; j < n2; ++j) {
        long long* rj = run.data() + static_cast<std::size_t>(j) * stride;
        for (long long i = m; i >= 1; --i)
            rj[i] = ord.leq(*left[i], tau2[j]) ? rj[i + 1] + 1 : 0;
    }
    // ok[j][s]: segments j+1..n2 can cover positions s+1..m.
    std::vector<std::uint8_t> ok(
        static_cast<std::size_t>(n2 + 1) * (m + 1), 0);
    auto ok_at = [&](int j, long long s) -> std::uint8_t& {
        return ok[static_cast<std::size_t>(j) * (m + 1) + s];
    };
    ok_at(n2, m) = 1;
    for (int j = n2 - 1; j >= 0; --j) {
        const long long* rj = run.data() + static_cast<std::size_t>(j) * stride;
        for (long long s = 0; s <= m; ++s) {
            const long long vmax = std::min(hi, m - s);
            for (long long v = lo; v <= vmax; ++v) {
                if (v > 0 && rj[s + 1] < v) break;
                if (ok_at(j + 1, s + v)) {
                    ok_at(j, s) = 1;
                    break;
                }
            }
        }
    }
    if (!ok_at(0, 0)) return std::nullopt;

    Division out;
    out.reserve(n2);
    long long s = 0;
    for (int j = 0; j < n2; ++j) {
        const long long* rj = run.data() + static_cast<std::size_t>(j) * stride;
        const long long vmax = std::min(hi, m - s);
        for (long long v = lo; v <= vmax; ++v) {
            if (v > 0 && rj[s + 1] < v) break;
            if (ok_at(j + 1, s + v)) {
                out.push_back(static_cast<int>(v));
                s += v;
                break;
            }
        }
    }
    return out;
}

std::optional<Division> exists_witness_bruteforce(const IndexedPair& p1,
                                                  const Word& tau2,
                                                  const GenerativeCondition& gc,
                                                  const PartialOrder& ord,
                                                  bool positive_only) {
    validate_pair(p1, ord, "left pair");
    validate_sequence(tau2, ord);
    const long long m = seq_sum(p1.lambda);
    const int n2 = static_cast<int>(tau2.size());
    const int lo = positive_only ? 1 : 0;
    Division cur(n2, 0);
    std::optional<Division> found;
    auto rec = [&](auto&& self, int pos, long long rest) -> bool {
        if (pos == n2) {
            if (rest != 0) return false;
            if (relation_holds(p1, IndexedPair{tau2, cur}, gc, ord)) {
                found = cur;
                return true;
            }
            return false;
        }
        for (long long v = lo; v <= rest; ++v) {
            cur[pos] = static_cast<int>(v);
            if (self(self, pos + 1, rest - v)) return true;
        }
        return false;
    };
    rec(rec, 0, m);
    return found;
}

bool endpoint_necessity(const IndexedPair& p1, const IndexedPair& p2,
                        const PartialOrder& ord) {
    validate_pair(p1, ord, "left pair");
    validate_pair(p2, ord, "right pair");
    auto all_positive = [](const std::vector<int>& l) {
        return std::all_of(l.begin(), l.end(), [](int v) { return v >= 1; });
    };
    // Only sound for all-positive depth sequences; otherwise inconclusive.
    if (!all_positive(p1.lambda) || !all_positive(p2.lambda)) return true;
    if (!ord.leq(p1.tau.front(), p2.tau.front())) return false;
    if (!ord.leq(p1.tau.back(), p2.tau.back())) return false;
    return true;
}

Sym product_symbol(std::span<const int> coords) {
    std::string s = "(";
    for (std::size_t k = 0; k < coords.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(coords[k]);
    }
    s += ")";
    return s;
}

PartialOrder product_order(std::span<const int> axes) {
    if (axes.empty()) throw std::invalid_argument("product_order: no axes");
    for (int a : axes)
        if (a < 1) throw std::invalid_argument("product_order: axis size must be >= 1");

    std::vector<std::vector<int>> tuples;
    std::vector<int> cur(axes.size(), 1);
    for (;;) {
        tuples.push_back(cur);
        std::size_t k = axes.size();
        while (k > 0) {
            --k;
            if (cur[k] < axes[k]) {
                ++cur[k];
                std::fill(cur.begin() + k + 1, cur.end(), 1);
                break;
            }
            if (k == 0) goto done;
        }
    }
done:
    PartialOrder ord;
    for (const auto& t : tuples) ord.carrier.insert(product_symbol(t));
    for (const auto& a : tuples)
        for (const auto& b : tuples) {
            bool le = true;
            for (std::size_t k = 0; k < axes.size() && le; ++k)
                le = b[k] <= a[k];
            if (le) ord.pairs.insert({product_symbol(a), product_symbol(b)});
        }
    return ord;
}

OrderSubsetCheck order_subset_property_check(const PartialOrder& ord1,
                                             const PartialOrder& ord2,
                                             const GenerativeCondition& gc,
                                             int samples, std::uint64_t seed) {
    if (ord1.carrier != ord2.carrier)
        throw std::invalid_argument("order_subset_property_check: carriers differ");
    if (!ord1.subset_of(ord2))
        throw std::invalid_argument("order_subset_property_check: ord1 not a subset of ord2");
    std::vector<Sym> syms(ord1.carrier.begin(), ord1.carrier.end());
    std::mt19937_64 rng(seed);
    auto rand_int = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    OrderSubsetCheck result;
    for (int s = 0; s < samples; ++s) {
        IndexedPair a, b;
        const int n1 = rand_int(1, 3), n2 = rand_int(1, 3);
        for (int k = 0; k < n1; ++k) {
            a.tau.push_back(syms[rand_int(0, static_cast<int>(syms.size()) - 1)]);
            a.lambda.push_back(rand_int(0, 4));
        }
        long long rest = seq_sum(a.lambda);
        for (int k = 0; k < n2; ++k) {
            b.tau.push_back(syms[rand_int(0, static_cast<int>(syms.size()) - 1)]);
            const int v = (k + 1 == n2)
                              ? static_cast<int>(rest)
                              : rand_int(0, static_cast<int>(rest));
            b.lambda.push_back(v);
            rest -= v;
        }
        if (relation_holds(a, b, gc, ord1) && !relation_holds(a, b, gc, ord2)) {
            result.ok = false;
            result.left = a;
            result.right = b;
            return result;
        }
    }
    return result;
}

}  // namespace rlub
