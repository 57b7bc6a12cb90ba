#include "nesto/polyvec.hpp"

#include <algorithm>
#include <sstream>

namespace nesto {

int CoeffVector::degree() const {
    for (std::size_t i = c.size(); i > 0; --i)
        if (c[i - 1] != 0) return static_cast<int>(i) - 1;
    return -1;
}

CoeffVector CoeffVector::trimmed() const {
    CoeffVector out = *this;
    while (out.c.size() > 1 && out.c.back() == 0) out.c.pop_back();
    if (out.c.empty()) out.c.push_back(0);
    return out;
}

bool CoeffVector::operator==(const CoeffVector& o) const {
    return trimmed().c == o.trimmed().c;
}

std::string CoeffVector::to_string() const {
    const CoeffVector t = trimmed();
    std::string s = "(";
    for (std::size_t i = 0; i < t.c.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(t.c[i]);
    }
    s += ")";
    return s;
}

CoeffVector CoeffVector::parse(std::string_view text) {
    std::string cleaned;
    cleaned.reserve(text.size());
    for (char ch : text) {
        if (ch == '(' || ch == ')' || ch == '[' || ch == ']' || ch == ',') ch = ' ';
        cleaned += ch;
    }
    std::istringstream in(cleaned);
    std::vector<std::int64_t> coeffs;
    std::string tok;
    while (in >> tok) {
        try {
            std::size_t used = 0;
            coeffs.push_back(std::stoll(tok, &used));
            if (used != tok.size()) throw ParseError("trailing characters in '" + tok + "'");
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception&) {
            throw ParseError("expected an integer coefficient, got '" + tok + "'");
        }
    }
    if (coeffs.empty()) throw ParseError("empty coefficient vector");
    return CoeffVector(std::move(coeffs));
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_add_overflow(a, b, &r))
        throw OverflowError("int64 overflow in " + std::to_string(a) + " + " + std::to_string(b));
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r))
        throw OverflowError("int64 overflow in " + std::to_string(a) + " * " + std::to_string(b));
    return r;
}

std::int64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (int i = 1; i <= k; ++i) {
        // exact at every step: r * (n-k+i) is divisible by i
        r = r * static_cast<unsigned>(n - k + i);
        r /= static_cast<unsigned>(i);
        if (r > static_cast<unsigned __int128>(INT64_MAX))
            throw OverflowError("binomial(" + std::to_string(n) + ", " + std::to_string(k) +
                                ") exceeds int64");
    }
    return static_cast<std::int64_t>(r);
}

CoeffVector poly_add(const CoeffVector& a, const CoeffVector& b) {
    CoeffVector out;
    out.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] = checked_add(a.at(i), b.at(i));
    return out.trimmed();
}

CoeffVector poly_mul(const CoeffVector& a, const CoeffVector& b) {
    if (a.degree() < 0 || b.degree() < 0) return CoeffVector{0};
    CoeffVector out;
    out.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            out.c[i + j] = checked_add(out.c[i + j], checked_mul(a.c[i], b.c[j]));
    }
    return out.trimmed();
}

CoeffVector poly_shift_mul_t(const CoeffVector& a) {
    CoeffVector out;
    out.c.reserve(a.c.size() + 1);
    out.c.push_back(0);
    out.c.insert(out.c.end(), a.c.begin(), a.c.end());
    return out;
}

CoeffVector f_to_h(const CoeffVector& f, int d) {
    if (d < 0) throw DegreeTooHigh("d must be nonnegative");
    if (f.degree() > d)
        throw DegreeTooHigh("deg f = " + std::to_string(f.degree()) + " exceeds d = " +
                            std::to_string(d));
    CoeffVector h;
    h.c.assign(static_cast<std::size_t>(d) + 1, 0);
    for (int j = 0; j <= d; ++j) {
        std::int64_t acc = 0;
        for (int i = 0; i <= j; ++i) {
            const std::int64_t term = checked_mul(f.at(static_cast<std::size_t>(i)),
                                                  binomial(d - i, j - i));
            acc = checked_add(acc, ((j - i) % 2 == 0) ? term : -term);
        }
        h.c[static_cast<std::size_t>(j)] = acc;
    }
    return h;
}

CoeffVector h_to_f(const CoeffVector& h, int d) {
    if (d < 0) throw DegreeTooHigh("d must be nonnegative");
    if (h.degree() > d) throw DegreeTooHigh("deg h exceeds d");
    CoeffVector f;
    f.c.assign(static_cast<std::size_t>(d) + 1, 0);
    for (int j = 0; j <= d; ++j) {
        std::int64_t acc = 0;
        for (int i = 0; i <= j; ++i)
            acc = checked_add(acc, checked_mul(h.at(static_cast<std::size_t>(i)),
                                               binomial(d - i, j - i)));
        f.c[static_cast<std::size_t>(j)] = acc;
    }
    return f.trimmed();
}

CoeffVector gamma_expand(const CoeffVector& g, int d) {
    if (g.degree() > d / 2)
        throw DegreeTooHigh("gamma degree exceeds floor(d/2) = " + std::to_string(d / 2));
    CoeffVector acc{0};
    for (int i = 0; i <= g.degree(); ++i) {
        const std::int64_t gi = g.at(static_cast<std::size_t>(i));
        if (gi == 0) continue;
        CoeffVector term;
        term.c.assign(static_cast<std::size_t>(d - 2 * i) + 1, 0);
        for (int j = 0; j <= d - 2 * i; ++j)
            term.c[static_cast<std::size_t>(j)] = checked_mul(gi, binomial(d - 2 * i, j));
        for (int s = 0; s < i; ++s) term = poly_shift_mul_t(term);
        acc = poly_add(acc, term);
    }
    return acc;
}

CoeffVector h_to_gamma(const CoeffVector& h, int d) {
    if (h.degree() > d) throw DegreeTooHigh("deg h exceeds d");
    for (int i = 0; i <= d; ++i)
        if (h.at(static_cast<std::size_t>(i)) != h.at(static_cast<std::size_t>(d - i)))
            throw NotSymmetric("h is not palindromic: h_" + std::to_string(i) +
                               " != h_" + std::to_string(d - i) + " in " + h.to_string());
    std::vector<std::int64_t> residual(static_cast<std::size_t>(d) + 1, 0);
    for (int i = 0; i <= d; ++i) residual[static_cast<std::size_t>(i)] = h.at(static_cast<std::size_t>(i));
    CoeffVector g;
    g.c.assign(static_cast<std::size_t>(d / 2) + 1, 0);
    for (int i = 0; i <= d / 2; ++i) {
        const std::int64_t gi = residual[static_cast<std::size_t>(i)];
        g.c[static_cast<std::size_t>(i)] = gi;
        if (gi == 0) continue;
        for (int j = 0; j <= d - 2 * i; ++j) {
            auto& slot = residual[static_cast<std::size_t>(i + j)];
            slot = checked_add(slot, -checked_mul(gi, binomial(d - 2 * i, j)));
        }
    }
    for (std::int64_t r : residual)
        if (r != 0) throw NotSymmetric("h is not in the span of t^i (1+t)^(d-2i)");
    return g.trimmed();
}

std::string canonical_building_key(const BuildingSet& b) {
    // relabel ground elements to 1..m by increasing original label
    std::vector<int> ground = b.ground().elements();
    std::vector<int> pos(65, 0);
    for (std::size_t i = 0; i < ground.size(); ++i) pos[static_cast<std::size_t>(ground[i])] = static_cast<int>(i);
    std::vector<std::uint64_t> masks;
    masks.reserve(b.size());
    for (const ElementSet& s : b.family()) {
        std::uint64_t m = 0;
        for (int e : s.elements()) m |= std::uint64_t{1} << pos[static_cast<std::size_t>(e)];
        masks.push_back(m);
    }
    std::sort(masks.begin(), masks.end());
    std::string key;
    key.reserve(masks.size() * 8 + 8);
    auto put = [&key](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) key += static_cast<char>((v >> (8 * i)) & 0xff);
    };
    put(static_cast<std::uint64_t>(ground.size()));
    for (std::uint64_t m : masks) put(m);
    return key;
}

CoeffVector VolodinEngine::gamma(const BuildingSet& b) {
    if (!is_flag(b)) throw NotFlag("gamma recursion needs a flag building set");
    return gamma_impl(b);
}

CoeffVector VolodinEngine::gamma_with_ordering(const FlagOrdering& o) {
    return fold(o.building, o.root, o.order);
}

CoeffVector VolodinEngine::fold(const BuildingSet& b, const Decomposition& d,
                                const std::vector<ElementSet>& order) {
    CoeffVector g = CoeffVector::one();
    std::vector<ElementSet> members = d.members;
    for (const ElementSet& bj : order) {
        const BuildingSet prev(b.ground(), members);
        const CoeffVector inner = poly_mul(gamma_impl(restriction(prev, bj)),
                                           gamma_impl(contraction(prev, bj)));
        g = poly_add(g, poly_shift_mul_t(inner));
        members.push_back(bj);
    }
    return g;
}

CoeffVector VolodinEngine::gamma_impl(const BuildingSet& b) {
    const std::string key = canonical_building_key(b);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    CoeffVector result;
    const std::vector<ElementSet> maxels = maximal_elements(b);
    if (maxels.size() > 1) {
        result = CoeffVector::one();
        for (const ElementSet& m : maxels) result = poly_mul(result, gamma_impl(restriction(b, m)));
    } else if (b.size() == 2 * static_cast<std::size_t>(b.n()) - 1) {
        result = CoeffVector::one();  // minimal flag building set
    } else {
        const FlagOrdering o = find_flag_ordering(b, OrderingStrategy::lex());
        result = fold(b, o.root, o.order);
    }
    memo_.emplace(key, result);
    return result;
}

CoeffVector gamma_via_volodin(const BuildingSet& b) {
    VolodinEngine engine;
    return engine.gamma(b);
}

}  // namespace nesto
