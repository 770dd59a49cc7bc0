#include "vlopt/scnem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <sstream>

namespace vlopt::scnem {

// ----------------------------------------------------------------- network ---

const char* role_name(Role role) {
    switch (role) {
        case Role::Supplier: return "supplier";
        case Role::Manufacturer: return "manufacturer";
        case Role::Wholesaler: return "wholesaler";
        case Role::Retailer: return "retailer";
        case Role::Market: return "market";
    }
    return "?";
}

Role role_from_name(const std::string& name) {
    if (name == "supplier") return Role::Supplier;
    if (name == "manufacturer") return Role::Manufacturer;
    if (name == "wholesaler") return Role::Wholesaler;
    if (name == "retailer") return Role::Retailer;
    if (name == "market") return Role::Market;
    throw NetworkError("unknown role: " + name);
}

int role_tier(Role role) { return static_cast<int>(role); }

const Spot& SupplyChainNetwork::spot(const std::string& id) const {
    for (const Spot& s : spots)
        if (s.id == id) return s;
    throw NetworkError("unknown spot id: " + id);
}

std::size_t SupplyChainNetwork::spot_index(const std::string& id) const {
    for (std::size_t i = 0; i < spots.size(); ++i)
        if (spots[i].id == id) return i;
    throw NetworkError("unknown spot id: " + id);
}

const Link& SupplyChainNetwork::link(int id) const {
    for (const Link& l : links)
        if (l.id == id) return l;
    throw NetworkError("unknown link id: " + std::to_string(id));
}

std::vector<std::size_t> SupplyChainNetwork::non_market_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < spots.size(); ++i)
        if (spots[i].role != Role::Market) out.push_back(i);
    return out;
}

std::vector<std::size_t> SupplyChainNetwork::supplier_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < spots.size(); ++i)
        if (spots[i].role == Role::Supplier) out.push_back(i);
    return out;
}

Eigen::Index SupplyChainNetwork::dimension() const {
    return static_cast<Eigen::Index>(links.size() + non_market_indices().size() +
                                     supplier_indices().size());
}

Bounds SupplyChainNetwork::decision_bounds() const {
    const Eigen::Index d = dimension();
    Bounds b;
    b.lower = Vec::Zero(d);
    b.upper = Vec::Zero(d);
    Eigen::Index k = 0;
    for (const Link& l : links) b.upper[k++] = l.f_max;
    for (std::size_t i : non_market_indices()) b.upper[k++] = spots[i].lambda_max;
    for (std::size_t i : supplier_indices()) b.upper[k++] = spots[i].q_e_max;
    return b;
}

void SupplyChainNetwork::validate() const {
    if (spots.empty()) throw NetworkError("network has no spots");
    if (links.empty()) throw NetworkError("network has no links");

    for (std::size_t i = 0; i < spots.size(); ++i)
        for (std::size_t j = i + 1; j < spots.size(); ++j)
            if (spots[i].id == spots[j].id)
                throw NetworkError("duplicate spot id: " + spots[i].id);
    for (std::size_t i = 0; i < links.size(); ++i)
        for (std::size_t j = i + 1; j < links.size(); ++j)
            if (links[i].id == links[j].id)
                throw NetworkError("duplicate link id: " + std::to_string(links[i].id));

    for (const Spot& s : spots) {
        if (s.id.empty()) throw NetworkError("spot with empty id");
        if (s.product.empty())
            throw NetworkError("spot " + s.id + ": missing product");
        if (s.role == Role::Supplier && s.q_e_max < 0)
            throw NetworkError("spot " + s.id + ": extraction cap must be >= 0");
        if (s.role != Role::Market && s.lambda_max < 0)
            throw NetworkError("spot " + s.id + ": profit-rate cap must be >= 0");
        if (s.role == Role::Manufacturer) {
            if (!s.recipe)
                throw NetworkError("manufacturer " + s.id + ": missing recipe");
            const Recipe& r = *s.recipe;
            if (r.materials.empty() || r.materials.size() != r.ratios.size())
                throw NetworkError("manufacturer " + s.id +
                                   ": recipe materials/ratios mismatch");
            if (!r.material_hc.empty() && r.material_hc.size() != r.materials.size())
                throw NetworkError("manufacturer " + s.id +
                                   ": recipe material_hc size mismatch");
            double sum = 0.0;
            for (double x : r.ratios) {
                if (!(x > 0.0))
                    throw NetworkError("manufacturer " + s.id +
                                       ": recipe ratios must be positive");
                sum += x;
            }
            if (std::abs(sum - 1.0) > 1e-9) {
                std::ostringstream os;
                os << "manufacturer " << s.id << ": recipe ratios sum to " << sum
                   << ", expected 1";
                throw NetworkError(os.str());
            }
            if (!(r.r_t > -1.0))
                throw NetworkError("manufacturer " + s.id +
                                   ": transforming rate must be > -1");
        } else if (s.recipe) {
            throw NetworkError("spot " + s.id + ": recipe on a non-manufacturer");
        }
        if (s.role == Role::Market) {
            if (!s.market)
                throw NetworkError("market " + s.id + ": missing demand parameters");
        } else if (s.market) {
            throw NetworkError("spot " + s.id + ": demand parameters on a non-market");
        }
    }

    for (const Link& l : links) {
        const std::string tag = "link " + std::to_string(l.id);
        const Spot& from = spot(l.from); // throws on unknown id
        const Spot& to = spot(l.to);
        if (l.from == l.to) throw NetworkError(tag + ": from == to");
        if (!(l.f_max > 0)) throw NetworkError(tag + ": capacity must be > 0");
        if (from.role == Role::Market)
            throw NetworkError(tag + ": markets have no outbound links");
        if (to.role == Role::Supplier)
            throw NetworkError(tag + ": suppliers have no inbound links");
        if (role_tier(from.role) >= role_tier(to.role))
            throw NetworkError(tag + ": must go strictly downstream (" +
                               std::string(role_name(from.role)) + " -> " +
                               std::string(role_name(to.role)) + ")");
        if (l.product != from.product)
            throw NetworkError(tag + ": product differs from what " + from.id + " sells");
        if (to.role == Role::Manufacturer) {
            const Recipe& r = *to.recipe;
            if (std::find(r.materials.begin(), r.materials.end(), l.product) ==
                r.materials.end())
                throw NetworkError(tag + ": product not in recipe of " + to.id);
        } else if (l.product != to.product) {
            throw NetworkError(tag + ": product differs from what " + to.id + " handles");
        }
    }

    for (const Spot& s : spots) {
        std::size_t in = 0, out = 0;
        for (const Link& l : links) {
            if (l.to == s.id) ++in;
            if (l.from == s.id) ++out;
        }
        if (s.role == Role::Supplier && in > 0)
            throw NetworkError("supplier " + s.id + " has inbound links");
        if (s.role == Role::Market && out > 0)
            throw NetworkError("market " + s.id + " has outbound links");
        if (s.role != Role::Supplier && in == 0)
            throw NetworkError("spot " + s.id + " has no inbound link");
        if (s.role != Role::Market && out == 0)
            throw NetworkError("spot " + s.id + " has no outbound link");
        if (s.role == Role::Manufacturer) {
            for (const std::string& mat : s.recipe->materials) {
                bool found = false;
                for (const Link& l : links)
                    if (l.to == s.id && l.product == mat) found = true;
                if (!found)
                    throw NetworkError("manufacturer " + s.id +
                                       ": no inbound link for material " + mat);
            }
        }
    }
}

// ---------------------------------------------------------------- decision ---

ScnemDecision decode(const Vec& x, const SupplyChainNetwork& net) {
    const auto nm = net.non_market_indices();
    const auto sup = net.supplier_indices();
    const Eigen::Index expected =
        static_cast<Eigen::Index>(net.links.size() + nm.size() + sup.size());
    if (x.size() != expected) {
        std::ostringstream os;
        os << "decision dimension mismatch: expected " << expected << " ("
           << net.links.size() << " flows + " << nm.size() << " rates + " << sup.size()
           << " extractions), got " << x.size();
        throw NetworkError(os.str());
    }
    ScnemDecision d;
    Eigen::Index k = 0;
    d.flows.resize(net.links.size());
    for (double& f : d.flows) f = x[k++];
    d.rates.resize(nm.size());
    for (double& r : d.rates) r = x[k++];
    d.extractions.resize(sup.size());
    for (double& q : d.extractions) q = x[k++];
    return d;
}

Vec encode(const ScnemDecision& d, const SupplyChainNetwork& net) {
    const auto nm = net.non_market_indices();
    const auto sup = net.supplier_indices();
    if (d.flows.size() != net.links.size() || d.rates.size() != nm.size() ||
        d.extractions.size() != sup.size())
        throw NetworkError("decision blocks do not match the network layout");
    Vec x(static_cast<Eigen::Index>(d.flows.size() + d.rates.size() + d.extractions.size()));
    Eigen::Index k = 0;
    for (double f : d.flows) x[k++] = f;
    for (double r : d.rates) x[k++] = r;
    for (double q : d.extractions) x[k++] = q;
    return x;
}

// -------------------------------------------------------------- operations ---

double transport_cost(const Link& link, double flow) {
    return link.a * flow + link.b * flow * flow + link.c;
}

std::pair<double, std::vector<double>> manufacture(const Recipe& recipe,
                                                   const std::vector<double>& arrived) {
    if (arrived.size() != recipe.ratios.size())
        throw NetworkError("manufacture: arrived quantities do not match the recipe");
    double bundle = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < recipe.ratios.size(); ++k) {
        if (!(recipe.ratios[k] > 0.0))
            throw NetworkError("manufacture: recipe ratio must be positive");
        bundle = std::min(bundle, arrived[k] / recipe.ratios[k]);
    }
    const double produced = (1.0 + recipe.r_t) * bundle;
    std::vector<double> leftover(recipe.ratios.size());
    for (std::size_t k = 0; k < recipe.ratios.size(); ++k)
        leftover[k] = std::max(0.0, arrived[k] - bundle * recipe.ratios[k]);
    return {produced, leftover};
}

double market_price(const MarketParams& params, double arrived) {
    return std::max(0.0, params.p_max - params.a * arrived - params.b * arrived * arrived);
}

double total_cost(const Spot& spot, const SpotState& state) {
    double c = spot.fc;
    // Purchase expenditure: cheapest offer per arrived unit (suppliers have
    // no inbound offers, so this term vanishes for them).
    for (const auto& [product, qty] : state.arrived) {
        const auto it = state.buying_price.find(product);
        if (it != state.buying_price.end()) c += it->second * qty;
    }
    // Variable cost on throughput.
    double throughput = 0.0;
    switch (spot.role) {
        case Role::Supplier: {
            const auto it = state.arrived.find(spot.product);
            throughput = it != state.arrived.end() ? it->second : 0.0;
            break;
        }
        case Role::Manufacturer:
            throughput = state.produced;
            break;
        default: {
            const auto it = state.arrived.find(spot.product);
            throughput = it != state.arrived.end() ? it->second : 0.0;
            break;
        }
    }
    c += spot.vc(throughput);
    // Holding cost on unsold product; leftovers are priced with the
    // per-material coefficients at manufacturers.
    const auto held_it = state.held.find(spot.product);
    const double held_product =
        held_it != state.held.end() ? std::max(0.0, held_it->second) : 0.0;
    c += spot.hc(held_product);
    if (spot.recipe) {
        const Recipe& r = *spot.recipe;
        for (std::size_t k = 0; k < r.materials.size() && k < r.material_hc.size(); ++k) {
            const auto it = state.held.find(r.materials[k]);
            if (it != state.held.end()) c += r.material_hc[k](std::max(0.0, it->second));
        }
    }
    // Transaction cost on the sold quantity.
    c += spot.tc(state.sold);
    return c;
}

double selling_price(const Spot& spot, double cost, double handled, double lambda,
                     const EvalOptions& opts) {
    (void)spot;
    if (handled > opts.quantity_floor) return cost / handled * (1.0 + lambda);
    if (opts.degenerate == DegeneratePricing::Cap) return opts.cap_price;
    return cost / opts.epsilon_quantity * (1.0 + lambda);
}

// --------------------------------------------------------------- propagate ---

EvaluationReport propagate(const SupplyChainNetwork& net, const ScnemDecision& d,
                           const EvalOptions& opts) {
    const std::size_t ns = net.spots.size();
    const std::size_t nl = net.links.size();
    const auto nm = net.non_market_indices();
    const auto sup = net.supplier_indices();
    if (d.flows.size() != nl || d.rates.size() != nm.size() ||
        d.extractions.size() != sup.size())
        throw NetworkError("decision blocks do not match the network layout");

    EvaluationReport rep;
    rep.states.resize(ns);

    // Per-spot profit rates and extractions.
    std::vector<double> lambda(ns, 0.0), extraction(ns, 0.0);
    for (std::size_t j = 0; j < nm.size(); ++j) lambda[nm[j]] = d.rates[j];
    for (std::size_t j = 0; j < sup.size(); ++j) extraction[sup[j]] = d.extractions[j];

    // Inbound/outbound link indices per spot.
    std::vector<std::vector<std::size_t>> inbound(ns), outbound(ns);
    for (std::size_t li = 0; li < nl; ++li) {
        inbound[net.spot_index(net.links[li].to)].push_back(li);
        outbound[net.spot_index(net.links[li].from)].push_back(li);
    }

    // Tier-ordered pass (stable within a tier).
    std::vector<std::size_t> order(ns);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return role_tier(net.spots[a].role) < role_tier(net.spots[b].role);
    });

    for (std::size_t si : order) {
        const Spot& sp = net.spots[si];
        SpotState& st = rep.states[si];

        // Inbound offers and arrivals (origins are already resolved because
        // links run strictly downstream).
        for (std::size_t li : inbound[si]) {
            const Link& l = net.links[li];
            const double f = d.flows[li];
            const double offer =
                rep.states[net.spot_index(l.from)].selling_price + transport_cost(l, f);
            st.offers[l.id] = offer;
            st.arrived[l.product] += f;
            auto [it, inserted] = st.buying_price.try_emplace(l.product, offer);
            if (!inserted) it->second = std::min(it->second, offer);
        }

        // Sold quantity: total outbound flow.
        for (std::size_t li : outbound[si]) st.sold += d.flows[li];

        double handled = 0.0;
        switch (sp.role) {
            case Role::Supplier: {
                st.arrived[sp.product] = extraction[si];
                st.held[sp.product] = extraction[si] - st.sold;
                handled = extraction[si];
                break;
            }
            case Role::Manufacturer: {
                const Recipe& r = *sp.recipe;
                std::vector<double> arr(r.materials.size(), 0.0);
                for (std::size_t k = 0; k < r.materials.size(); ++k) {
                    const auto it = st.arrived.find(r.materials[k]);
                    if (it != st.arrived.end()) arr[k] = it->second;
                }
                auto [produced, leftover] = manufacture(r, arr);
                st.produced = produced;
                for (std::size_t k = 0; k < r.materials.size(); ++k)
                    st.held[r.materials[k]] = leftover[k];
                st.held[sp.product] = produced - st.sold;
                handled = produced;
                break;
            }
            case Role::Market: {
                double total = 0.0;
                for (const auto& [product, qty] : st.arrived) total += qty;
                st.buying_price[sp.product] = market_price(*sp.market, total);
                continue; // markets carry no cost model and sell nothing
            }
            default: { // wholesaler, retailer
                const auto it = st.arrived.find(sp.product);
                const double arrived = it != st.arrived.end() ? it->second : 0.0;
                st.held[sp.product] = arrived - st.sold;
                handled = arrived;
                break;
            }
        }

        st.cost = total_cost(sp, st);
        st.selling_price = selling_price(sp, st.cost, handled, lambda[si], opts);
    }

    // Link records.
    rep.links.resize(nl);
    for (std::size_t li = 0; li < nl; ++li) {
        const Link& l = net.links[li];
        LinkRecord& lr = rep.links[li];
        lr.link_id = l.id;
        lr.flow = d.flows[li];
        lr.from_price = rep.states[net.spot_index(l.from)].selling_price;
        lr.transport = transport_cost(l, lr.flow);
        lr.to_price = rep.states[net.spot_index(l.to)].buying_price.at(l.product);
        lr.residual = lr.to_price - lr.transport - lr.from_price;
    }

    rep.objective = objective(net, rep);
    rep.penalty = penalty(net, rep);
    rep.fitness = rep.objective + opts.penalty_weight * rep.penalty;
    return rep;
}

double objective(const SupplyChainNetwork& net, const EvaluationReport& report) {
    double total = 0.0;
    for (std::size_t li = 0; li < report.links.size(); ++li) {
        const double r = report.links[li].residual;
        const double f = report.links[li].flow;
        const double pa = std::max(0.0, -r);
        const double pb = std::max(0.0, r);
        total += f * pa + (net.links[li].f_max - f) * pb;
    }
    return total;
}

double penalty(const SupplyChainNetwork& net, const EvaluationReport& report) {
    double v = 0.0;
    for (std::size_t si = 0; si < net.spots.size(); ++si)
        for (const auto& [product, held] : report.states[si].held)
            v += std::max(0.0, -held);
    for (std::size_t si : net.supplier_indices()) {
        const SpotState& st = report.states[si];
        const auto it = st.arrived.find(net.spots[si].product);
        const double extracted = it != st.arrived.end() ? it->second : 0.0;
        v += std::max(0.0, st.sold - extracted);
    }
    return v;
}

double fitness(const SupplyChainNetwork& net, const Vec& x, const EvalOptions& opts) {
    return propagate(net, decode(x, net), opts).fitness;
}

Problem make_problem(const SupplyChainNetwork& net, const EvalOptions& opts) {
    auto shared = std::make_shared<const SupplyChainNetwork>(net);
    Problem p;
    p.name = net.name.empty() ? "scnem" : net.name;
    p.dimension = net.dimension();
    p.bounds = net.decision_bounds();
    p.fitness = [shared, opts](const Vec& x) { return fitness(*shared, x, opts); };
    return p;
}

// ---------------------------------------------------------------- residuals ---

const char* vi_case_name(ViCase c) {
    switch (c) {
        case ViCase::NoTrade: return "no-trade";
        case ViCase::Saturated: return "saturated";
        case ViCase::Indifferent: return "indifferent";
    }
    return "?";
}

ViReport vi_report(const SupplyChainNetwork& net, const EvaluationReport& report,
                   double residual_tol, double flow_tol) {
    ViReport out;
    out.rows.reserve(report.links.size());
    for (std::size_t li = 0; li < report.links.size(); ++li) {
        const LinkRecord& lr = report.links[li];
        ViRow row;
        row.link_id = lr.link_id;
        row.residual = lr.residual;
        row.flow = lr.flow;
        row.f_max = net.links[li].f_max;
        if (lr.residual < -residual_tol) {
            row.expected = ViCase::NoTrade;
            row.pass = lr.flow <= flow_tol;
        } else if (lr.residual > residual_tol) {
            row.expected = ViCase::Saturated;
            row.pass = lr.flow >= row.f_max - flow_tol;
        } else {
            row.expected = ViCase::Indifferent;
            row.pass = true;
        }
        out.all_pass = out.all_pass && row.pass;
        out.rows.push_back(row);
    }
    return out;
}

} // namespace vlopt::scnem
