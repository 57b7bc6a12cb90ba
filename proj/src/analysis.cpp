#include "nesto/analysis.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <map>
#include <set>
#include <unordered_set>

#include <json.hpp>

namespace nesto {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Joint neighbor-color refinement over both graphs. Colors are drawn from a
// shared table per round, so equal colors mean equal refinement histories
// across the two graphs.
std::pair<std::vector<int>, std::vector<int>> wl_colors_joint(const FlagComplex& a,
                                                              const FlagComplex& b) {
    std::vector<int> ca = a.degrees(), cb = b.degrees();
    const int rounds = a.vertex_count() + 1;
    for (int round = 0; round < rounds; ++round) {
        std::map<std::pair<int, std::vector<int>>, int> ids;
        auto refine = [&ids](const FlagComplex& g, const std::vector<int>& c) {
            std::vector<int> next(c.size(), 0);
            for (int v = 0; v < g.vertex_count(); ++v) {
                std::vector<int> neigh;
                for (int u = 0; u < g.vertex_count(); ++u)
                    if (g.adjacent(v, u)) neigh.push_back(c[static_cast<std::size_t>(u)]);
                std::sort(neigh.begin(), neigh.end());
                const auto key = std::make_pair(c[static_cast<std::size_t>(v)], std::move(neigh));
                auto [it, inserted] = ids.emplace(key, static_cast<int>(ids.size()));
                next[static_cast<std::size_t>(v)] = it->second;
            }
            return next;
        };
        std::vector<int> na = refine(a, ca);
        std::vector<int> nb = refine(b, cb);
        if (na == ca && nb == cb) break;
        ca = std::move(na);
        cb = std::move(nb);
    }
    return {std::move(ca), std::move(cb)};
}

bool extend_isomorphism(const FlagComplex& a, const FlagComplex& b, const std::vector<int>& order,
                        std::size_t pos, std::vector<int>& map_ab, std::vector<char>& used,
                        const std::vector<int>& ca, const std::vector<int>& cb) {
    if (pos == order.size()) return true;
    const int v = order[pos];
    for (int w = 0; w < b.vertex_count(); ++w) {
        if (used[static_cast<std::size_t>(w)]) continue;
        if (ca[static_cast<std::size_t>(v)] != cb[static_cast<std::size_t>(w)]) continue;
        bool ok = true;
        for (std::size_t p = 0; p < pos; ++p) {
            const int v2 = order[p];
            if (a.adjacent(v, v2) != b.adjacent(w, map_ab[static_cast<std::size_t>(v2)])) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        map_ab[static_cast<std::size_t>(v)] = w;
        used[static_cast<std::size_t>(w)] = 1;
        if (extend_isomorphism(a, b, order, pos + 1, map_ab, used, ca, cb)) return true;
        used[static_cast<std::size_t>(w)] = 0;
    }
    return false;
}

}  // namespace

std::optional<std::vector<int>> graphs_isomorphic(const FlagComplex& a, const FlagComplex& b) {
    if (a.vertex_count() > 40 || b.vertex_count() > 40)
        throw SizeLimit("isomorphism search supports at most 40 vertices");
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count())
        return std::nullopt;
    const int n = a.vertex_count();
    if (n == 0) return std::vector<int>{};

    auto joint = wl_colors_joint(a, b);
    std::vector<int>& ca = joint.first;
    std::vector<int>& cb = joint.second;
    {
        std::vector<int> ha = ca, hb = cb;
        std::sort(ha.begin(), ha.end());
        std::sort(hb.begin(), hb.end());
        if (ha != hb) return std::nullopt;
    }

    // assign rare colors first
    std::vector<int> class_size(static_cast<std::size_t>(n) + 1, 0);
    for (int v = 0; v < n; ++v) ++class_size[static_cast<std::size_t>(ca[static_cast<std::size_t>(v)])];
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) order[static_cast<std::size_t>(v)] = v;
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        const int sx = class_size[static_cast<std::size_t>(ca[static_cast<std::size_t>(x)])];
        const int sy = class_size[static_cast<std::size_t>(ca[static_cast<std::size_t>(y)])];
        if (sx != sy) return sx < sy;
        return x < y;
    });

    std::vector<int> map_ab(static_cast<std::size_t>(n), -1);
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    if (!extend_isomorphism(a, b, order, 0, map_ab, used, ca, cb)) return std::nullopt;

    // re-verify the witness edge-exactly before handing it out
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (a.adjacent(u, v) != b.adjacent(map_ab[static_cast<std::size_t>(u)],
                                               map_ab[static_cast<std::size_t>(v)]))
                throw SizeLimit("internal error: isomorphism witness failed re-verification");
    return map_ab;
}

namespace {

// Rainbow q-subsets of {1..limit} under the round-robin coloring
// c(v) = (v-1) mod colors, as sorted bitmasks. Ascending mask order is
// exactly reverse-lexicographic order on the sets.
std::vector<std::uint64_t> rainbow_sets(int limit, int q, int colors) {
    std::vector<std::uint64_t> out;
    std::vector<int> pick(static_cast<std::size_t>(q));
    auto rec = [&](auto&& self, int start, int depth, std::uint64_t mask, unsigned used_colors) -> void {
        if (depth == q) {
            out.push_back(mask);
            return;
        }
        for (int v = start; v <= limit; ++v) {
            const unsigned cbit = 1u << ((v - 1) % colors);
            if (used_colors & cbit) continue;
            self(self, v + 1, depth + 1, mask | (std::uint64_t{1} << (v - 1)), used_colors | cbit);
        }
    };
    rec(rec, 1, 0, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::int64_t ffk_min_shadow(std::int64_t m, int q, int colors) {
    if (m <= 0) return 0;
    if (q < 1 || colors < q) throw MalformedVector("no rainbow sets of size " + std::to_string(q) +
                                                   " with " + std::to_string(colors) + " colors");
    if (q == 1) return 0;  // the shadow of vertices is the empty face only
    int limit = q;
    std::vector<std::uint64_t> sets = rainbow_sets(limit, q, colors);
    while (static_cast<std::int64_t>(sets.size()) < m) {
        if (limit > 512) throw SizeLimit("ffk shadow computation out of range");
        ++limit;
        sets = rainbow_sets(limit, q, colors);
    }
    std::unordered_set<std::uint64_t> shadow;
    for (std::int64_t i = 0; i < m; ++i) {
        std::uint64_t s = sets[static_cast<std::size_t>(i)];
        std::uint64_t bits = s;
        while (bits) {
            const std::uint64_t low = bits & (~bits + 1);
            shadow.insert(s & ~low);
            bits &= bits - 1;
        }
    }
    return static_cast<std::int64_t>(shadow.size());
}

bool ffk_check(const CoeffVector& f) {
    const CoeffVector t = f.trimmed();
    if (t.c.empty() || t.c[0] != 1) throw MalformedVector("f-vector must start with 1");
    for (std::int64_t v : t.c)
        if (v < 0) throw MalformedVector("f-vector entries must be nonnegative");
    const int top = t.degree();
    if (top <= 0) return true;
    for (int i = 1; i < top; ++i) {
        const std::int64_t m = t.at(static_cast<std::size_t>(i) + 1);
        if (m == 0) continue;
        if (t.at(static_cast<std::size_t>(i)) < ffk_min_shadow(m, i + 1, top)) return false;
    }
    return true;
}

FlagComplex gamma_complex_of(const BuildingSet& b, const OrderingStrategy& strategy) {
    const std::vector<ElementSet> maxels = maximal_elements(b);
    if (maxels.size() == 1) return build_gamma_complex(find_flag_ordering(b, strategy));
    FlagComplex acc;
    for (const ElementSet& m : maxels) {
        OrderingStrategy s = strategy;
        s.seed = strategy.seed * 131 + static_cast<std::uint64_t>(m.mask() % 8191);
        acc = join(acc, build_gamma_complex(find_flag_ordering(restriction(b, m), s)));
    }
    return acc;
}

CoeffVector cyclic_formula_vector(int n) {
    CoeffVector out;
    for (int r = 0; 2 * r <= n; ++r) {
        // n! / (r! r! (n-2r)!)
        std::int64_t v = binomial(n, 2 * r);
        v = checked_mul(v, binomial(2 * r, r));
        out.c.push_back(v);
    }
    return out;
}

VerifyReport verify_triple(const BuildingSet& b, int num_orderings, std::uint64_t seed,
                           const std::string& identifier) {
    if (!is_flag(b)) throw NotFlag("verification needs a flag building set");
    VerifyReport r;
    r.identifier = identifier.empty() ? ("n=" + std::to_string(b.n()) + ",|B|=" +
                                         std::to_string(b.size()))
                                      : identifier;
    r.n = b.n();
    r.family_size = b.size();

    auto t0 = Clock::now();
    r.gamma_nested = gamma_oracle(b);
    r.nested_ms = ms_since(t0);

    t0 = Clock::now();
    VolodinEngine engine;
    r.gamma_volodin = engine.gamma(b);
    r.volodin_ms = ms_since(t0);

    t0 = Clock::now();
    std::set<std::string> seen;
    std::uint64_t s = seed;
    const int cap = num_orderings * 20 + 20;
    for (int attempt = 0; attempt < cap && static_cast<int>(r.gamma_complexes.size()) < num_orderings;
         ++attempt, ++s) {
        const FlagComplex g = gamma_complex_of(b, OrderingStrategy::random(s));
        std::string fingerprint;
        for (int v = 0; v < g.vertex_count(); ++v) fingerprint += g.label(v) + ";";
        for (const auto& [u, v] : g.edges())
            fingerprint += std::to_string(u) + "-" + std::to_string(v) + ";";
        if (!seen.insert(fingerprint).second) continue;  // duplicate ordering, resample
        r.ordering_seeds.push_back(s);
        r.gamma_complexes.push_back(f_vector_cliques(g));
    }
    r.complexes_ms = ms_since(t0);

    r.agreement = r.gamma_nested == r.gamma_volodin;
    for (const CoeffVector& g : r.gamma_complexes) r.agreement = r.agreement && g == r.gamma_nested;
    r.ffk = ffk_check(r.gamma_nested);

    if (b.n() >= 3 && b == building_set_cycle(b.n())) {
        r.cyclic_formula = cyclic_formula_vector(b.n());
        r.cyclic_diverges = !(*r.cyclic_formula == r.gamma_nested);
    }
    return r;
}

std::string report_to_text(const VerifyReport& r) {
    std::string out;
    out += "report " + r.identifier + "\n";
    out += "n " + std::to_string(r.n) + "\n";
    out += "elements " + std::to_string(r.family_size) + "\n";
    out += "gamma_nested " + r.gamma_nested.to_string() + "\n";
    out += "gamma_volodin " + r.gamma_volodin.to_string() + "\n";
    for (std::size_t i = 0; i < r.gamma_complexes.size(); ++i)
        out += "gamma_complex[" + std::to_string(i) + "] " + r.gamma_complexes[i].to_string() +
               " seed=" + std::to_string(r.ordering_seeds[i]) + "\n";
    out += std::string("agreement ") + (r.agreement ? "true" : "false") + "\n";
    out += std::string("ffk ") + (r.ffk ? "true" : "false") + "\n";
    if (r.cyclic_formula) {
        out += "cyclic_formula " + r.cyclic_formula->to_string() + "\n";
        if (r.cyclic_diverges)
            out += "note cyclic multinomial formula diverges from the enumerated gamma " +
                   r.gamma_nested.to_string() + "; reporting both\n";
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "time_nested_ms %.3f\ntime_volodin_ms %.3f\ntime_complexes_ms %.3f\n",
                  r.nested_ms, r.volodin_ms, r.complexes_ms);
    out += buf;
    return out;
}

std::string report_to_json(const VerifyReport& r) {
    nlohmann::json j;
    j["identifier"] = r.identifier;
    j["n"] = r.n;
    j["elements"] = r.family_size;
    j["gamma_nested"] = r.gamma_nested.trimmed().c;
    j["gamma_volodin"] = r.gamma_volodin.trimmed().c;
    j["orderings"] = nlohmann::json::array();
    for (std::size_t i = 0; i < r.gamma_complexes.size(); ++i)
        j["orderings"].push_back({{"seed", r.ordering_seeds[i]},
                                  {"gamma", r.gamma_complexes[i].trimmed().c}});
    j["agreement"] = r.agreement;
    j["ffk"] = r.ffk;
    j["timings_ms"] = {{"nested", r.nested_ms},
                       {"volodin", r.volodin_ms},
                       {"complexes", r.complexes_ms}};
    if (r.cyclic_formula) {
        j["cyclic_formula"] = {{"value", r.cyclic_formula->trimmed().c},
                               {"diverges", r.cyclic_diverges}};
    }
    return j.dump(2) + "\n";
}

}  // namespace nesto
