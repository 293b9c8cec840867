#include "cwqpt/classical.hpp"
#include "cwqpt/parallel.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace cwqpt {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

struct Sampling {
    int n;
    double p(int i) const { return -1.0 + 2.0 * i / (n - 1); }
    double q(int k) const { return -std::numbers::pi + two_pi * k / n; }
    double dq() const { return two_pi / n; }
};

// Edge ids. Constant-p edges run from q_k to q_{k+1}; constant-q edges run
// from p_i to p_{i+1}.
using EdgeId = std::int64_t;
EdgeId p_edge(const Sampling& s, int i, int k) { return static_cast<EdgeId>(i) * s.n + k; }
EdgeId q_edge(const Sampling& s, int i, int k) {
    return static_cast<EdgeId>(s.n) * s.n + static_cast<EdgeId>(i) * s.n + k;
}

class LevelExtractor {
public:
    LevelExtractor(const ClassicalModel& model, double lambda, const Sampling& s, const std::vector<double>& values,
                   double level)
        : model_(model), lambda_(lambda), s_(s), v_(values), level_(level) {}

    std::vector<Polyline> run() {
        collect_segments();
        return chain();
    }

private:
    double value(int i, int k) const { return v_[static_cast<std::size_t>(i) * s_.n + (k % s_.n)]; }
    bool inside(int i, int k) const { return value(i, k) >= level_; }

    void add_segment(EdgeId a, EdgeId b) {
        const std::size_t idx = segments_.size();
        segments_.push_back({a, b});
        adjacency_[a].push_back(idx);
        adjacency_[b].push_back(idx);
    }

    void collect_segments() {
        for (int i = 0; i + 1 < s_.n; ++i) {
            for (int k = 0; k < s_.n; ++k) {
                const bool c0 = inside(i, k);
                const bool c1 = inside(i + 1, k);
                const bool c2 = inside(i + 1, k + 1);
                const bool c3 = inside(i, k + 1);
                const EdgeId e[4] = {q_edge(s_, i, k), p_edge(s_, i + 1, k), q_edge(s_, i, (k + 1) % s_.n),
                                     p_edge(s_, i, k)};
                const bool cut[4] = {c0 != c1, c1 != c2, c3 != c2, c0 != c3};
                const int count = cut[0] + cut[1] + cut[2] + cut[3];
                if (count == 2) {
                    int first = -1;
                    for (int t = 0; t < 4; ++t) {
                        if (!cut[t]) continue;
                        if (first < 0) {
                            first = t;
                        } else {
                            add_segment(e[first], e[t]);
                        }
                    }
                } else if (count == 4) {
                    const double centre =
                        model_.energy({0.5 * (s_.p(i) + s_.p(i + 1)), s_.q(k) + 0.5 * s_.dq()}, lambda_);
                    if ((centre >= level_) == c0) {
                        add_segment(e[0], e[1]);
                        add_segment(e[2], e[3]);
                    } else {
                        add_segment(e[3], e[0]);
                        add_segment(e[1], e[2]);
                    }
                }
            }
        }
    }

    PhasePoint crossing(EdgeId id) const {
        const EdgeId nn = static_cast<EdgeId>(s_.n) * s_.n;
        const bool along_p = id >= nn;
        const EdgeId local = along_p ? id - nn : id;
        const int i = static_cast<int>(local / s_.n);
        const int k = static_cast<int>(local % s_.n);
        double a = 0.0;
        double b = 0.0;
        double fa = 0.0;
        double fb = 0.0;
        std::function<PhasePoint(double)> at;
        if (along_p) {
            a = s_.p(i);
            b = s_.p(i + 1);
            fa = value(i, k) - level_;
            fb = value(i + 1, k) - level_;
            const double q = s_.q(k);
            at = [q](double x) { return PhasePoint{x, q}; };
        } else {
            a = s_.q(k);
            b = a + s_.dq();
            fa = value(i, k) - level_;
            fb = value(i, k + 1) - level_;
            const double p = s_.p(i);
            at = [p](double x) { return PhasePoint{p, x}; };
        }
        double x = a;
        if (fa == 0.0) {
            x = a;
        } else if (fb == 0.0) {
            x = b;
        } else {
            auto f = [&](double t) { return model_.energy(at(t), lambda_) - level_; };
            std::uintmax_t iterations = 100;
            const auto bracket = boost::math::tools::toms748_solve(f, a, b, fa, fb,
                                                                   boost::math::tools::eps_tolerance<double>(50),
                                                                   iterations);
            x = 0.5 * (bracket.first + bracket.second);
        }
        PhasePoint pt = at(x);
        pt.q = wrap_angle(pt.q);
        return pt;
    }

    void walk(std::size_t seg, EdgeId from, Polyline& line, std::vector<double>& q_steps) {
        EdgeId current = from;
        while (true) {
            used_[seg] = true;
            const EdgeId next = segments_[seg].first == current ? segments_[seg].second : segments_[seg].first;
            const PhasePoint pt = crossing(next);
            q_steps.push_back(wrap_angle(pt.q - line.points.back().q));
            line.points.push_back(pt);
            current = next;
            std::size_t following = segments_.size();
            for (std::size_t cand : adjacency_[current]) {
                if (!used_[cand]) following = cand;
            }
            if (following == segments_.size()) return;
            seg = following;
        }
    }

    std::vector<Polyline> chain() {
        used_.assign(segments_.size(), false);
        std::vector<EdgeId> ends;
        std::vector<EdgeId> all;
        for (const auto& [edge, segs] : adjacency_) {
            all.push_back(edge);
            if (segs.size() == 1) ends.push_back(edge);
        }
        std::sort(ends.begin(), ends.end());
        std::sort(all.begin(), all.end());

        std::vector<Polyline> lines;
        auto start_from = [&](EdgeId edge, bool closed_candidate) {
            std::size_t seg = segments_.size();
            for (std::size_t cand : adjacency_[edge]) {
                if (!used_[cand]) {
                    seg = cand;
                    break;
                }
            }
            if (seg == segments_.size()) return;
            Polyline line;
            line.energy = level_;
            line.points.push_back(crossing(edge));
            std::vector<double> q_steps;
            walk(seg, edge, line, q_steps);
            if (closed_candidate) {
                // The walk ends back on the starting edge; drop the repeated point.
                line.points.pop_back();
                line.closed = true;
                double total = 0.0;
                for (double d : q_steps) total += d;
                line.winding = static_cast<int>(std::lround(total / two_pi));
            }
            lines.push_back(std::move(line));
        };
        for (EdgeId e : ends) start_from(e, false);
        for (EdgeId e : all) start_from(e, true);
        return lines;
    }

    const ClassicalModel& model_;
    double lambda_;
    const Sampling& s_;
    const std::vector<double>& v_;
    double level_;
    std::vector<std::pair<EdgeId, EdgeId>> segments_;
    std::unordered_map<EdgeId, std::vector<std::size_t>> adjacency_;
    std::vector<bool> used_;
};

std::vector<double> sample(const ClassicalModel& model, double lambda, const Sampling& s) {
    std::vector<double> values(static_cast<std::size_t>(s.n) * s.n);
    parallel_for(static_cast<std::size_t>(s.n), [&](std::size_t i) {
        const int row = static_cast<int>(i);
        for (int k = 0; k < s.n; ++k) values[i * s.n + k] = model.energy({s.p(row), s.q(k)}, lambda);
    });
    return values;
}

PhasePoint leftmost(const Polyline& line) {
    PhasePoint best = line.points.front();
    for (const PhasePoint& pt : line.points) {
        if (pt.q < best.q || (pt.q == best.q && pt.p < best.p)) best = pt;
    }
    return best;
}

} // namespace

std::vector<Polyline> contour_levels(const ClassicalModel& model, double lambda, int grid, double level) {
    if (grid < 3) throw std::invalid_argument("contour_levels: grid must be >= 3");
    const Sampling s{grid};
    const std::vector<double> values = sample(model, lambda, s);
    return LevelExtractor(model, lambda, s, values, level).run();
}

PhasePortrait portrait(const ClassicalModel& model, double lambda, int grid, const std::vector<double>& energies) {
    if (grid < 100) throw std::invalid_argument("portrait: grid must be >= 100");
    PhasePortrait out;
    out.id = model.id();
    out.lambda = lambda;
    out.grid = grid;

    const std::vector<double> separatrices = separatrix_energies(model, lambda);
    if (energies.empty()) {
        const EnergyRange range = energy_range(model, lambda);
        constexpr int levels = 12;
        for (int k = 0; k < levels; ++k) {
            out.energies.push_back(range.min + (k + 0.5) * (range.max - range.min) / levels);
        }
        out.energies.insert(out.energies.end(), separatrices.begin(), separatrices.end());
    } else {
        out.energies = energies;
    }
    std::sort(out.energies.begin(), out.energies.end());
    out.energies.erase(std::unique(out.energies.begin(), out.energies.end(),
                                   [](double a, double b) { return std::abs(a - b) <= 1e-12; }),
                       out.energies.end());

    const Sampling s{grid};
    const std::vector<double> values = sample(model, lambda, s);
    std::vector<std::vector<Polyline>> per_level(out.energies.size());
    parallel_for(out.energies.size(), [&](std::size_t idx) {
        per_level[idx] = LevelExtractor(model, lambda, s, values, out.energies[idx]).run();
        const bool is_separatrix = std::any_of(separatrices.begin(), separatrices.end(), [&](double e) {
            return std::abs(e - out.energies[idx]) <= 1e-12;
        });
        for (Polyline& line : per_level[idx]) line.separatrix = is_separatrix;
    });
    for (auto& lines : per_level) {
        std::sort(lines.begin(), lines.end(), [](const Polyline& a, const Polyline& b) {
            const PhasePoint la = leftmost(a);
            const PhasePoint lb = leftmost(b);
            if (la.q != lb.q) return la.q < lb.q;
            return la.p < lb.p;
        });
        for (Polyline& line : lines) out.orbits.push_back(std::move(line));
    }
    return out;
}

} // namespace cwqpt
