#pragma once

// The exceptional divisor of the standard resolution, computed twice: by the
// closed form over Euclid's algorithm of (p, q), and by simulating the chart
// substitutions of each blowup on the strict transforms.

#include "qhc/errors.hpp"
#include "qhc/quasihom.hpp"

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace qhc {

/// One division q_j = s_j * p_j + r_j.
struct EuclidStep {
    unsigned q = 0;
    unsigned p = 0;
    unsigned s = 0;
    unsigned r = 0;
    friend bool operator==(const EuclidStep&, const EuclidStep&) = default;
};

struct EuclidChain {
    std::vector<EuclidStep> steps;

    std::size_t length() const { return steps.size(); }
    /// N = sum of the quotients: the number of blowups.
    unsigned blowups() const {
        unsigned n = 0;
        for (const auto& st : steps) n += st.s;
        return n;
    }
    std::vector<unsigned> quotients() const {
        std::vector<unsigned> s;
        for (const auto& st : steps) s.push_back(st.s);
        return s;
    }
};

inline EuclidChain euclid_chain(unsigned p, unsigned q) {
    if (p == 0 || q == 0) throw std::invalid_argument("euclid_chain: weights must be positive");
    if (p > q) throw std::invalid_argument("euclid_chain: requires p <= q");
    if (std::gcd(p, q) != 1) throw std::invalid_argument("euclid_chain: weights must be coprime");
    EuclidChain chain;
    unsigned qj = q, pj = p;
    for (;;) {
        EuclidStep st{qj, pj, qj / pj, qj % pj};
        chain.steps.push_back(st);
        if (st.r == 0) break;
        qj = pj;
        pj = st.r;
    }
    return chain;
}

/// Self-intersections c_1(D_1), ..., c_1(D_N) along the chain. Index bounds
/// written with the Euclid length in the classical statement use the total
/// line count N here.
inline std::vector<int> chain_self_intersections(unsigned p, unsigned q) {
    const auto s = euclid_chain(p, q).quotients();
    const std::size_t m = s.size();
    const unsigned n_lines = std::accumulate(s.begin(), s.end(), 0u);
    std::vector<int> c(n_lines, -2);
    std::vector<bool> assigned(n_lines, false);
    auto S = [&s](std::size_t j) { return static_cast<int>(s[j - 1]); };  // 1-based
    auto set = [&](long j, int value) {
        if (j < 1 || j > static_cast<long>(n_lines) || assigned[j - 1])
            throw ConsistencyError("self-intersection formula assigns position " + std::to_string(j) + " twice");
        c[j - 1] = value;
        assigned[j - 1] = true;
    };
    // Partial sums s_1 + s_3 + ... + s_{2k-1} and s_2 + s_4 + ... + s_{2k}.
    auto odd_sum = [&](std::size_t k) {
        long t = 0;
        for (std::size_t i = 1; i <= k; ++i) t += S(2 * i - 1);
        return t;
    };
    auto even_sum = [&](std::size_t k) {
        long t = 0;
        for (std::size_t i = 1; i <= k; ++i) t += S(2 * i);
        return t;
    };
    const long N = n_lines;
    if (m == 1) {
        set(S(1), -1);
    } else if (m % 2 == 1) {
        const std::size_t alpha = (m - 1) / 2;
        for (std::size_t k = 1; k <= alpha; ++k) set(odd_sum(k), -(S(2 * k) + 2));
        set(odd_sum(alpha + 1), -1);
        for (std::size_t k = 1; k + 1 <= alpha; ++k) set(N - even_sum(k) + 1, -(S(2 * k + 1) + 2));
        set(N - even_sum(alpha) + 1, -(S(2 * alpha + 1) + 1));
    } else {
        const std::size_t alpha = m / 2;
        for (std::size_t k = 1; k + 1 <= alpha; ++k) set(odd_sum(k), -(S(2 * k) + 2));
        set(odd_sum(alpha), -(S(2 * alpha) + 1));
        for (std::size_t k = 1; k + 1 <= alpha; ++k) set(N - even_sum(k) + 1, -(S(2 * k + 1) + 2));
        set(N - even_sum(alpha) + 1, -1);
    }
    return c;
}

namespace detail {

struct ChainGroup {
    unsigned twos = 0;
    int marker = 0;  // absolute value of the closing entry
};

// Reads runs of -2 closed by a heavier entry, walking from `from` towards the -1 at `stop`.
inline std::optional<std::pair<std::vector<ChainGroup>, unsigned>> read_side(const std::vector<int>& chain,
                                                                              long from, long stop, long step) {
    std::vector<ChainGroup> groups;
    unsigned run = 0;
    for (long i = from; i != stop; i += step) {
        int v = chain[static_cast<std::size_t>(i)];
        if (v == -2) {
            ++run;
        } else if (v <= -3) {
            groups.push_back({run, -v});
            run = 0;
        } else {
            return std::nullopt;
        }
    }
    return std::make_pair(groups, run);
}

// Euclid quotients of one orientation, or nullopt if the shape is wrong.
inline std::optional<std::vector<unsigned>> quotients_from_chain(const std::vector<int>& chain) {
    long pos = -1;
    for (std::size_t i = 0; i < chain.size(); ++i)
        if (chain[i] == -1) {
            if (pos >= 0) return std::nullopt;
            pos = static_cast<long>(i);
        }
    if (pos < 0) return std::nullopt;
    auto left = read_side(chain, 0, pos, 1);
    auto right = read_side(chain, static_cast<long>(chain.size()) - 1, pos, -1);
    if (!left || !right) return std::nullopt;
    const auto& [lg, l_tail] = *left;
    const auto& [rg, r_tail] = *right;
    std::vector<unsigned> s;
    if (lg.size() == rg.size()) {  // odd length 2a+1
        for (std::size_t k = 0; k < lg.size(); ++k) {
            s.push_back(lg[k].twos + 1);
            s.push_back(rg[k].twos + 1);
        }
        s.push_back(l_tail + 1);
    } else if (lg.size() == rg.size() + 1) {  // even length 2a
        for (std::size_t k = 0; k < rg.size(); ++k) {
            s.push_back(lg[k].twos + 1);
            s.push_back(rg[k].twos + 1);
        }
        s.push_back(lg.back().twos + 1);
        s.push_back(r_tail + 1);
    } else {
        return std::nullopt;
    }
    return s;
}

}  // namespace detail

/// The coprime (p, q) whose chain is `chain` (in either orientation).
inline std::pair<unsigned, unsigned> weights_from_chain(const std::vector<int>& chain) {
    if (chain.empty()) throw std::invalid_argument("weights_from_chain: empty chain");
    std::vector<int> reversed(chain.rbegin(), chain.rend());
    for (const auto& oriented : {chain, reversed}) {
        auto s = detail::quotients_from_chain(oriented);
        if (!s || s->empty()) continue;
        if (s->size() > 1 && s->back() < 2) continue;
        // q/p = [s_1; s_2, ..., s_m]
        unsigned long long num = s->back(), den = 1;
        for (std::size_t i = s->size() - 1; i-- > 0;) {
            unsigned long long next = (*s)[i] * num + den;
            den = num;
            num = next;
            if (num > (1ull << 31)) break;
        }
        if (num > (1ull << 31) || den > num) continue;
        unsigned p = static_cast<unsigned>(den), q = static_cast<unsigned>(num);
        if (std::gcd(p, q) != 1) continue;
        if (chain_self_intersections(p, q) == oriented) return {p, q};
    }
    throw std::invalid_argument("weights_from_chain: chain matches no coprime pair of weights");
}

enum class Marker { principal, end };

inline std::string to_string(Marker m) { return m == Marker::principal ? "principal" : "end"; }

struct DivisorLine {
    int self_intersection = -1;
    std::set<Marker> markers;
    std::size_t created = 0;  // 0-based blowup number that created the line
};

struct Attachment {
    std::size_t line = 0;  // position in the chain, 0-based
    std::string label;     // "branch<j>", "x" or "y"
    std::optional<PointP1> lambda;  // point of the principal line met by the branch
};

/// Bookkeeping of one blowup, for conservation checks.
struct BlowupRecord {
    std::size_t lines_before = 0;
    std::size_t lines_after = 0;
    int sum_before = 0;
    int sum_after = 0;
    unsigned lines_through_center = 0;
};

struct ResolutionTree {
    std::vector<DivisorLine> lines;  // in chain order, starting from the end created first
    std::vector<Attachment> attachments;
    unsigned blowup_count = 0;
    std::vector<BlowupRecord> history;

    std::vector<int> chain() const {
        std::vector<int> c;
        for (const auto& l : lines) c.push_back(l.self_intersection);
        return c;
    }
};

namespace detail {

struct LocalBranch {
    std::string label;
    bool recorded = true;  // false for the coordinate axes that only steer the resolution
    BiPoly local;
};

// An infinitely near point: the origin of local coordinates (u, v), with
// divisor lines possibly along u = 0 and v = 0.
struct NearPoint {
    std::vector<LocalBranch> branches;
    std::optional<std::size_t> div_u;
    std::optional<std::size_t> div_v;
    std::optional<Scalar> coordinate;  // position on the newest line, for free points
    std::optional<PointP1> position;   // 0, infinity or the free coordinate
};

inline unsigned multiplicity(const BiPoly& f) {
    unsigned m = ~0u;
    for (const auto& [e, c] : f.terms()) m = std::min(m, e.x + e.y);
    return m;
}

inline bool resolved(const NearPoint& pt) {
    if (pt.branches.empty()) return true;
    if (pt.branches.size() > 1) return false;
    const BiPoly& f = pt.branches.front().local;
    if (multiplicity(f) != 1) return false;
    if (pt.div_u.has_value() == pt.div_v.has_value()) return false;
    // Smooth branch with tangent l_u u + l_v v = 0.
    if (pt.div_u) return !f.coeff(0, 1).is_zero();
    return !f.coeff(1, 0).is_zero();
}

class Simulator {
public:
    explicit Simulator(const NormalForm& nf) : nf_(nf) {}

    ResolutionTree run() {
        Field f = nf_.field();
        NearPoint origin;
        // The coordinate axes are fibres of y^p / x^q and are always resolved
        // along with the curve; they are reported only when they are branches.
        const char* x_name = nf_.swapped ? "y" : "x";
        const char* y_name = nf_.swapped ? "x" : "y";
        origin.branches.push_back({x_name, nf_.m == 1, BiPoly::x(f)});
        origin.branches.push_back({y_name, nf_.n == 1, BiPoly::y(f)});
        for (std::size_t j = 0; j < nf_.lambdas.size(); ++j)
            origin.branches.push_back({"branch" + std::to_string(j + 1), true,
                                       BiPoly::y(f, nf_.p) - BiPoly::monomial(nf_.lambdas[j], nf_.q, 0)});
        std::deque<NearPoint> work{origin};
        bool first = true;
        while (!work.empty()) {
            NearPoint pt = std::move(work.front());
            work.pop_front();
            if (!first && resolved(pt)) {
                attach(pt);
                continue;
            }
            first = false;
            if (self_.size() > 10000) throw ConsistencyError("blowup simulation does not terminate");
            for (auto& next : blow_up(pt)) work.push_back(std::move(next));
        }
        return assemble();
    }

private:
    std::vector<NearPoint> blow_up(const NearPoint& pt) {
        BlowupRecord rec;
        rec.lines_before = self_.size();
        rec.sum_before = std::accumulate(self_.begin(), self_.end(), 0);
        const std::size_t e = self_.size();
        self_.push_back(-1);
        for (auto d : {pt.div_u, pt.div_v})
            if (d) {
                self_[*d] -= 1;
                ++rec.lines_through_center;
                edges_.insert({std::min(*d, e), std::max(*d, e)});
            }
        if (pt.div_u && pt.div_v) edges_.erase({std::min(*pt.div_u, *pt.div_v), std::max(*pt.div_u, *pt.div_v)});
        rec.lines_after = self_.size();
        rec.sum_after = std::accumulate(self_.begin(), self_.end(), 0);
        history_.push_back(rec);

        const Field f = pt.branches.empty() ? nf_.field() : pt.branches.front().local.field();
        const BiPoly u = BiPoly::x(f);
        const BiPoly v = BiPoly::y(f);
        // Chart A: (u, v) = (u, t u), new line u = 0, old {v = 0} -> {t = 0}.
        // Chart B: (u, v) = (s v, v), new line v = 0, old {u = 0} -> {s = 0}.
        NearPoint at_zero{{}, e, pt.div_v, std::nullopt, PointP1(Scalar::zero(f))};
        NearPoint at_infinity{{}, pt.div_u, e, std::nullopt, PointP1::infinity()};
        std::vector<NearPoint> free_points;
        for (const auto& br : pt.branches) {
            const unsigned mult = multiplicity(br.local);
            BiPoly chart_a = divide_monomial(substitute(br.local, u, u * v), mult, 0);
            uni::Poly on_line;
            for (const auto& [ex, c] : chart_a.terms())
                if (ex.x == 0) {
                    if (on_line.size() <= ex.y) on_line.resize(ex.y + 1, Scalar::zero(f));
                    on_line[ex.y] = c;
                }
            on_line = uni::trimmed(on_line);
            if (on_line.size() <= 1) {
                BiPoly chart_b = divide_monomial(substitute(br.local, u * v, v), 0, mult);
                at_infinity.branches.push_back({br.label, br.recorded, chart_b});
                continue;
            }
            const std::size_t deg = on_line.size() - 1;
            Scalar point = -on_line[deg - 1] / (Scalar::from_int(static_cast<long>(deg), f) * on_line[deg]);
            check_single_point(on_line, point, br.label);
            if (point.is_zero()) {
                at_zero.branches.push_back({br.label, br.recorded, chart_a});
                continue;
            }
            BiPoly moved = substitute(chart_a, u, v + BiPoly::constant(point));
            auto it = std::find_if(free_points.begin(), free_points.end(),
                                   [&point](const NearPoint& np) { return *np.coordinate == point; });
            if (it == free_points.end()) {
                free_points.push_back({{}, e, std::nullopt, point, PointP1(point)});
                it = std::prev(free_points.end());
            }
            it->branches.push_back({br.label, br.recorded, moved});
        }
        std::vector<NearPoint> out;
        if (!at_zero.branches.empty()) out.push_back(std::move(at_zero));
        if (!at_infinity.branches.empty()) out.push_back(std::move(at_infinity));
        for (auto& fp : free_points) out.push_back(std::move(fp));
        return out;
    }

    // A branch of an irreducible factor meets the new line in one point, so its
    // restriction there is a pure power (t - point)^deg.
    static void check_single_point(const uni::Poly& on_line, const Scalar& point, const std::string& label) {
        uni::Poly power{Scalar::one(point.field())};
        for (std::size_t i = 1; i < on_line.size(); ++i) {
            uni::Poly next(power.size() + 1, Scalar::zero(point.field()));
            for (std::size_t k = 0; k < power.size(); ++k) {
                next[k + 1] += power[k];
                next[k] -= point * power[k];
            }
            power = std::move(next);
        }
        const Scalar& lead = on_line.back();
        for (std::size_t k = 0; k < on_line.size(); ++k)
            if (!(on_line[k] == lead * power[k]))
                throw ConsistencyError("branch " + label + " meets an exceptional line in several points");
    }

    void attach(const NearPoint& pt) {
        if (pt.branches.empty()) return;
        const auto& br = pt.branches.front();
        if (!br.recorded) return;
        std::size_t line = pt.div_u ? *pt.div_u : *pt.div_v;
        attachments_.push_back({line, br.label, pt.position});
    }

    ResolutionTree assemble() const {
        const std::size_t n = self_.size();
        std::vector<std::vector<std::size_t>> adj(n);
        for (const auto& [a, b] : edges_) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        // Linear chain: degrees <= 2, connected, walk from the earliest end.
        std::vector<std::size_t> order;
        if (n == 1) {
            order.push_back(0);
        } else if (n > 1) {
            std::optional<std::size_t> start;
            for (std::size_t i = 0; i < n; ++i) {
                if (adj[i].size() > 2) throw ConsistencyError("resolution tree is not a linear chain");
                if (adj[i].size() == 1 && !start) start = i;
            }
            if (!start) throw ConsistencyError("resolution tree has no end");
            std::size_t prev = n, cur = *start;
            for (;;) {
                order.push_back(cur);
                std::size_t next = n;
                for (auto nb : adj[cur])
                    if (nb != prev) next = nb;
                if (next == n) break;
                prev = cur;
                cur = next;
            }
            if (order.size() != n) throw ConsistencyError("resolution tree is disconnected");
        }
        std::vector<std::size_t> position(n);
        for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;

        ResolutionTree tree;
        tree.blowup_count = static_cast<unsigned>(n);
        tree.history = history_;
        for (auto idx : order) tree.lines.push_back({self_[idx], {}, idx});
        for (const auto& a : attachments_) tree.attachments.push_back({position[a.line], a.label, a.lambda});
        std::sort(tree.attachments.begin(), tree.attachments.end(), [](const Attachment& a, const Attachment& b) {
            return a.line != b.line ? a.line < b.line : a.label < b.label;
        });
        if (!tree.lines.empty()) {
            tree.lines.front().markers.insert(Marker::end);
            tree.lines.back().markers.insert(Marker::end);
            std::optional<std::size_t> principal;
            for (const auto& a : tree.attachments)
                if (a.label.rfind("branch", 0) == 0) principal = a.line;
            if (!principal)
                for (std::size_t i = 0; i < tree.lines.size(); ++i)
                    if (tree.lines[i].self_intersection == -1) principal = i;
            if (principal) tree.lines[*principal].markers.insert(Marker::principal);
            // Positions only carry moduli on the principal line.
            for (auto& a : tree.attachments)
                if (a.line != principal) a.lambda.reset();
        }
        return tree;
    }

    const NormalForm& nf_;
    std::vector<int> self_;
    std::set<std::pair<std::size_t, std::size_t>> edges_;
    std::vector<Attachment> attachments_;  // line = creation index until assembled
    std::vector<BlowupRecord> history_;
};

}  // namespace detail

/// Blows up until the curve, together with both coordinate axes, has normal
/// crossings with the divisor. The origin is always blown up once.
inline ResolutionTree simulate_resolution(const NormalForm& nf) {
    if (!check_reduced(nf)) throw NotReduced("resolution requires a reduced curve; use --reduce");
    return detail::Simulator(nf).run();
}

/// Same weighted chain up to reversal, with matching markers.
inline bool trees_isomorphic(const ResolutionTree& a, const ResolutionTree& b) {
    if (a.lines.size() != b.lines.size()) return false;
    auto match = [&](bool reversed) {
        const std::size_t n = a.lines.size();
        for (std::size_t i = 0; i < n; ++i) {
            const auto& lb = b.lines[reversed ? n - 1 - i : i];
            if (a.lines[i].self_intersection != lb.self_intersection || a.lines[i].markers != lb.markers)
                return false;
        }
        return true;
    };
    return match(false) || match(true);
}

enum class GraphFormat { text, dot, json };

inline GraphFormat parse_graph_format(const std::string& s) {
    if (s == "text") return GraphFormat::text;
    if (s == "dot") return GraphFormat::dot;
    if (s == "json") return GraphFormat::json;
    throw std::invalid_argument("unknown graph format '" + s + "'");
}

inline nlohmann::json tree_to_json(const ResolutionTree& t) {
    nlohmann::json lines = nlohmann::json::array();
    for (std::size_t i = 0; i < t.lines.size(); ++i) {
        nlohmann::json markers = nlohmann::json::array();
        for (auto m : t.lines[i].markers) markers.push_back(to_string(m));
        lines.push_back({{"index", i + 1}, {"self_intersection", t.lines[i].self_intersection}, {"markers", markers}});
    }
    nlohmann::json atts = nlohmann::json::array();
    for (const auto& a : t.attachments) {
        nlohmann::json lam = a.lambda ? nlohmann::json(a.lambda->to_string()) : nlohmann::json(nullptr);
        atts.push_back({{"line", a.line + 1}, {"label", a.label}, {"lambda", lam}});
    }
    return {{"lines", lines}, {"attachments", atts}, {"blowups", t.blowup_count}};
}

inline std::string export_graph(const ResolutionTree& t, GraphFormat format) {
    std::ostringstream out;
    switch (format) {
        case GraphFormat::text: {
            for (std::size_t i = 0; i < t.lines.size(); ++i)
                out << (i ? " — " : "") << "D" << i + 1 << "(" << t.lines[i].self_intersection << ")";
            for (std::size_t i = 0; i < t.attachments.size(); ++i) {
                const auto& a = t.attachments[i];
                std::string name = a.label.rfind("branch", 0) == 0 ? "branch" : a.label;
                out << (i ? ", " : "; ") << name << "@D" << a.line + 1;
            }
            break;
        }
        case GraphFormat::dot: {
            out << "graph resolution {\n";
            for (std::size_t i = 0; i < t.lines.size(); ++i)
                out << "  D" << i + 1 << " [label=\"D" << i + 1 << " (" << t.lines[i].self_intersection << ")\"];\n";
            for (std::size_t i = 0; i + 1 < t.lines.size(); ++i) out << "  D" << i + 1 << " -- D" << i + 2 << ";\n";
            for (std::size_t j = 0; j < t.attachments.size(); ++j) {
                const auto& a = t.attachments[j];
                out << "  B" << j + 1 << " [label=\"B" << j + 1 << "\", xlabel=\"" << a.label << "\", shape=plaintext];\n";
                out << "  D" << a.line + 1 << " -- B" << j + 1 << ";\n";
            }
            out << "}\n";
            break;
        }
        case GraphFormat::json: out << tree_to_json(t).dump(2); break;
    }
    return out.str();
}

}  // namespace qhc
