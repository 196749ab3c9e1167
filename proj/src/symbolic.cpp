#include "ecir/symbolic.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ecir/errors.hpp"

namespace ecir {

namespace {

// Merge terms with identical factor lists.
std::vector<DerivativeTerm> collect(std::vector<DerivativeTerm> terms) {
    std::map<std::vector<DerivativeFactor>, Rational> merged;
    for (auto& t : terms) {
        auto [it, inserted] = merged.emplace(std::move(t.factors), t.coefficient);
        if (!inserted) it->second += t.coefficient;
    }
    std::vector<DerivativeTerm> out;
    out.reserve(merged.size());
    for (auto& [factors, coeff] : merged) {
        if (coeff != Rational(0)) out.push_back({coeff, factors});
    }
    return out;
}

// One application of D_{s_v} by the product rule. D_v of a first-order
// factor promotes it to a second-order factor; D_v of a second-order factor
// vanishes.
std::vector<DerivativeTerm> apply_derivative(const std::vector<DerivativeTerm>& terms, int v) {
    std::vector<DerivativeTerm> out;
    for (const auto& t : terms) {
        // F itself differentiates: term picks up a new D_v Y factor.
        DerivativeTerm lead = t;
        lead.factors.push_back({v, -1});
        std::sort(lead.factors.begin(), lead.factors.end());
        out.push_back(std::move(lead));
        for (std::size_t p = 0; p < t.factors.size(); ++p) {
            if (t.factors[p].j != -1) continue;
            DerivativeTerm d = t;
            d.factors[p] = {std::min(t.factors[p].i, v), std::max(t.factors[p].i, v)};
            std::sort(d.factors.begin(), d.factors.end());
            out.push_back(std::move(d));
        }
    }
    return collect(std::move(out));
}

}  // namespace

std::vector<DerivativeTerm> differentiate(int n) {
    if (n < 1 || n > 4) {
        std::ostringstream os;
        os << "differentiate: n=" << n << " outside the supported range [1, 4]";
        throw CapacityError(os.str());
    }
    std::vector<DerivativeTerm> terms{{Rational(1), {}}};
    for (int v = 1; v <= n; ++v) {
        terms = apply_derivative(terms, v);
        terms = apply_derivative(terms, v);
    }
    return terms;
}

std::vector<double> freeze_and_collect(std::span<const DerivativeTerm> terms, double t,
                                       std::span<const double> nodes,
                                       const std::function<double(double, double)>& kappa) {
    const int n = static_cast<int>(nodes.size());
    std::vector<double> out(n + 1, 0.0);
    for (const auto& term : terms) {
        double value = term.coefficient.to_double();
        int x_power = 0;
        for (const auto& f : term.factors) {
            if (f.j == -1) {
                value *= -2.0 * kappa(nodes[f.i - 1], t);
                ++x_power;
            } else {
                value *= -2.0 * kappa(nodes[f.i - 1], nodes[f.j - 1]);
            }
        }
        if (x_power % 2 != 0) throw std::logic_error("freeze_and_collect: odd power of X_t");
        out[x_power / 2] += value;
    }
    return out;
}

std::vector<double> freeze_and_collect_const(std::span<const DerivativeTerm> terms,
                                             std::span<const double> nodes, double T) {
    return freeze_and_collect(terms, 0.0, nodes,
                              [T](double a, double b) { return T - std::max(a, b); });
}

std::vector<double> freeze_and_collect_timedep(std::span<const DerivativeTerm> terms, double t,
                                               std::span<const double> nodes,
                                               const ModelContext& ctx) {
    return freeze_and_collect(terms, t, nodes,
                              [&ctx](double a, double b) { return ctx.kappa_tilde(a, b); });
}

PartitionShape classify(const DerivativeTerm& term) {
    // Indices and their appearance counts; every index must appear twice.
    std::map<int, int> appearances;
    std::map<int, int> singleton_count;
    std::map<int, std::vector<int>> adjacency;  // proper edges only
    PartitionShape shape;
    shape.predicted_coefficient = Rational(1);

    std::map<std::pair<int, int>, int> edge_multiplicity;
    for (const auto& f : term.factors) {
        if (f.j == -1) {
            appearances[f.i] += 1;
            singleton_count[f.i] += 1;
            shape.blocks.push_back({PartitionBlock::Case::Singleton, {f.i}});
        } else if (f.i == f.j) {
            appearances[f.i] += 2;
            shape.blocks.push_back({PartitionBlock::Case::SelfPair, {f.i}});
        } else {
            appearances[f.i] += 1;
            appearances[f.j] += 1;
            edge_multiplicity[{f.i, f.j}] += 1;
        }
    }
    for (const auto& [e, mult] : edge_multiplicity) {
        if (mult > 2) throw std::logic_error("classify: edge multiplicity exceeds 2");
        adjacency[e.first].push_back(e.second);
        adjacency[e.second].push_back(e.first);
        if (mult == 2) {
            adjacency[e.first].push_back(e.second);
            adjacency[e.second].push_back(e.first);
        }
    }
    for (const auto& [idx, count] : appearances) {
        if (count != 2) throw std::logic_error("classify: index does not appear exactly twice");
    }

    // Decompose the edge multigraph into components; each must be a simple
    // path (degree-1 ends carrying one singleton factor each) or a simple
    // cycle.
    std::map<int, bool> visited;
    for (const auto& [start, neighbors] : adjacency) {
        if (visited[start]) continue;
        std::vector<int> component;
        std::vector<int> stack{start};
        visited[start] = true;
        int degree_sum = 0;
        std::vector<int> endpoints;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            component.push_back(u);
            const auto& nb = adjacency[u];
            degree_sum += static_cast<int>(nb.size());
            if (nb.size() == 1) {
                endpoints.push_back(u);
            } else if (nb.size() != 2) {
                throw std::logic_error("classify: vertex of degree > 2");
            }
            for (int v : nb) {
                if (!visited[v]) {
                    visited[v] = true;
                    stack.push_back(v);
                }
            }
        }
        const int k = static_cast<int>(component.size());
        const int edges = degree_sum / 2;
        std::sort(component.begin(), component.end());
        if (endpoints.empty() && edges == k) {
            // cycle; the doubled edge (k == 2) is the squared-pair case
            if (k == 2) {
                shape.blocks.push_back({PartitionBlock::Case::Pair, component});
                shape.predicted_coefficient *= Rational(2);
            } else {
                shape.blocks.push_back({PartitionBlock::Case::Cycle, component});
                shape.predicted_coefficient *= Rational(std::int64_t{1} << k);
            }
        } else if (endpoints.size() == 2 && edges == k - 1) {
            for (int e : endpoints) {
                if (singleton_count[e] != 1)
                    throw std::logic_error("classify: chain endpoint without its first-derivative factor");
            }
            shape.blocks.push_back({PartitionBlock::Case::Chain, component});
            shape.predicted_coefficient *= Rational(std::int64_t{1} << k);
        } else {
            throw std::logic_error("classify: component is neither a path nor a cycle");
        }
    }
    // Interior / isolated indices may carry zero or two singleton factors;
    // one singleton is legal only on a chain endpoint.
    for (const auto& [idx, count] : singleton_count) {
        if (count == 1 && adjacency.find(idx) == adjacency.end())
            throw std::logic_error("classify: dangling first-derivative factor");
    }
    if (shape.predicted_coefficient != term.coefficient) {
        std::ostringstream os;
        os << "classify: predicted coefficient " << shape.predicted_coefficient
           << " does not match term coefficient " << term.coefficient;
        throw std::logic_error(os.str());
    }
    return shape;
}

void dump_terms(std::span<const DerivativeTerm> terms, std::ostream& os) {
    std::vector<const DerivativeTerm*> order;
    order.reserve(terms.size());
    for (const auto& t : terms) order.push_back(&t);
    std::sort(order.begin(), order.end(), [](const DerivativeTerm* a, const DerivativeTerm* b) {
        return a->factors < b->factors;
    });
    for (const DerivativeTerm* t : order) {
        os << t->coefficient << " *";
        for (std::size_t p = 0; p < t->factors.size();) {
            std::size_t run = p;
            while (run < t->factors.size() && t->factors[run] == t->factors[p]) ++run;
            const auto& f = t->factors[p];
            const std::size_t power = run - p;
            os << ' ';
            if (power > 1) os << '(';
            if (f.j == -1) {
                os << "D(s" << f.i << ")Y";
            } else {
                os << "D(s" << f.i << ",s" << f.j << ")Y";
            }
            if (power > 1) os << ")^" << power;
            p = run;
        }
        os << '\n';
    }
}

}  // namespace ecir
