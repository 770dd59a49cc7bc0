#pragma once

// Supply chain network equilibrium model: network data model, quantity and
// price propagation, the equilibrium-gap objective, penalty-based fitness,
// and a per-link residual report against the no-trade / saturated /
// indifferent trichotomy.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vlopt/core.hpp"

namespace vlopt::scnem {

// ----------------------------------------------------------------- network ---

enum class Role { Supplier, Manufacturer, Wholesaler, Retailer, Market };

const char* role_name(Role role);
Role role_from_name(const std::string& name);
int role_tier(Role role); // supplier 0 → market 4; links go strictly downstream

// Quadratic cost segment a*q + b*q^2.
struct CostCoeffs {
    double a = 0.0;
    double b = 0.0;
    double operator()(double q) const { return a * q + b * q * q; }
};

// Manufacturer recipe: consumes materials in fixed ratios, emits
// (1 + r_t) units of product per unit of consumed material bundle.
struct Recipe {
    std::vector<std::string> materials;  // input product ids (order fixes ratios)
    std::vector<double> ratios;          // positive, sum to 1
    double r_t = 0.0;                    // transforming rate, > -1
    std::vector<CostCoeffs> material_hc; // holding cost per leftover material
};

// Inverse demand at a market: price = max(0, p_max - a*Q - b*Q^2).
struct MarketParams {
    double p_max = 0.0;
    double a = 0.0;
    double b = 0.0;
};

struct Spot {
    std::string id;
    Role role = Role::Supplier;
    std::string product;     // sold product (non-markets) / demanded product (markets)
    double fc = 0.0;          // fixed cost per period
    CostCoeffs vc;            // variable cost on throughput
    CostCoeffs hc;            // holding cost on unsold product
    CostCoeffs tc;            // transaction cost on sold quantity
    double q_e_max = 0.0;     // extraction cap (suppliers)
    double lambda_max = 0.0;  // profit-rate cap (non-markets)
    std::optional<Recipe> recipe;       // manufacturers only
    std::optional<MarketParams> market; // markets only
};

struct Link {
    int id = 0; // ordinal; defines decision-vector order
    std::string from;
    std::string to;
    std::string product;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double f_max = 0.0;
};

class NetworkError : public std::runtime_error {
  public:
    explicit NetworkError(const std::string& what) : std::runtime_error(what) {}
};

struct SupplyChainNetwork {
    std::string name;
    std::vector<Spot> spots; // file order; tiers derived from roles
    std::vector<Link> links; // ascending id after load

    const Spot& spot(const std::string& id) const;
    std::size_t spot_index(const std::string& id) const;
    const Link& link(int id) const;

    std::vector<std::size_t> non_market_indices() const; // spot order
    std::vector<std::size_t> supplier_indices() const;   // spot order

    Eigen::Index dimension() const; // #links + #non-markets + #suppliers
    Bounds decision_bounds() const; // [0,f_max] | [0,lambda_max] | [0,q_e_max]

    void validate() const; // throws NetworkError with a named defect
};

// ---------------------------------------------------------------- decision ---

// Flat decision layout: [link flows | profit rates | supplier extractions].
struct ScnemDecision {
    std::vector<double> flows;       // link order
    std::vector<double> rates;       // non-market spots, spot order
    std::vector<double> extractions; // suppliers, spot order
};

ScnemDecision decode(const Vec& x, const SupplyChainNetwork& net);
Vec encode(const ScnemDecision& d, const SupplyChainNetwork& net);

// ---------------------------------------------------------------- pricing ---

// Fallback rule for the selling price when a spot handles (almost) no
// quantity: either price as if it handled `epsilon_quantity`, or quote a
// flat prohibitive cap that keeps idle spots out of every cheapest-offer
// computation. The cap is the default: it reproduces the bundled reference
// solutions, while the epsilon rule makes idle spots with small fixed cost
// look like attractive suppliers.
enum class DegeneratePricing { Cap, Epsilon };

struct EvalOptions {
    double penalty_weight = 1e6;
    DegeneratePricing degenerate = DegeneratePricing::Cap;
    double cap_price = 1e9;
    double epsilon_quantity = 1e-6;
    double quantity_floor = 1e-6; // handled quantity at or below this is degenerate
};

// ------------------------------------------------------------------ states ---

struct SpotState {
    // Quantities keyed by product id. For suppliers `arrived` holds the
    // extraction; for manufacturers it holds the per-material inflows.
    std::map<std::string, double> arrived;
    std::map<std::string, double> held; // may go negative; penalised, not clamped
    double produced = 0.0;              // manufacturers
    double sold = 0.0;                  // outbound total of the sold product
    double cost = 0.0;                  // C
    double selling_price = 0.0;         // p^O (non-markets)
    // Cheapest inbound offer per product (markets: the demand price).
    std::map<std::string, double> buying_price;
    // Offered price per inbound link id: p^O_from + transport(link, flow).
    std::map<int, double> offers;
};

struct LinkRecord {
    int link_id = 0;
    double flow = 0.0;
    double from_price = 0.0; // origin p^O
    double transport = 0.0;  // link cost at this flow
    double to_price = 0.0;   // destination buying price for the product
    double residual = 0.0;   // to_price - transport - from_price
};

struct EvaluationReport {
    std::vector<SpotState> states; // parallel to net.spots
    std::vector<LinkRecord> links; // link order
    double objective = 0.0;
    double penalty = 0.0;  // violation magnitude (unweighted)
    double fitness = 0.0;  // objective + penalty_weight * penalty
};

// -------------------------------------------------------------- operations ---

// Transport cost a*f + b*f^2 + c of carrying flow f over a link.
double transport_cost(const Link& link, double flow);

// Production from arrived materials (recipe order): output quantity and the
// leftover of each material. Leftovers are nonnegative by construction.
std::pair<double, std::vector<double>> manufacture(const Recipe& recipe,
                                                   const std::vector<double>& arrived);

// Inverse demand price at a market given the total arrived quantity.
double market_price(const MarketParams& params, double arrived);

// Total cost C of a spot once quantities and buying prices are resolved:
// fixed + purchase + variable(throughput) + holding(unsold, and leftover
// materials at manufacturers) + transaction(sold).
double total_cost(const Spot& spot, const SpotState& state);

// Cost-plus selling price C/(handled quantity) * (1 + lambda), with the
// configured fallback when the handled quantity is degenerate.
double selling_price(const Spot& spot, double cost, double handled, double lambda,
                     const EvalOptions& opts);

// Tier-ordered evaluation of a decision: quantities, costs, prices, link
// records, objective, penalty, fitness.
EvaluationReport propagate(const SupplyChainNetwork& net, const ScnemDecision& d,
                           const EvalOptions& opts = {});

// Equilibrium gap: sum over links of f*max(0,-r) + (f_max-f)*max(0,r),
// recomputed from the report's link records.
double objective(const SupplyChainNetwork& net, const EvaluationReport& report);

// Constraint violation magnitude: negative holdings plus supplier
// oversell, recomputed from the report's states.
double penalty(const SupplyChainNetwork& net, const EvaluationReport& report);

// decode -> propagate -> objective + weight * violation.
double fitness(const SupplyChainNetwork& net, const Vec& x, const EvalOptions& opts = {});

// Packages the network as an optimisation problem over its decision box.
Problem make_problem(const SupplyChainNetwork& net, const EvalOptions& opts = {});

// ---------------------------------------------------------------- residuals ---

enum class ViCase { NoTrade, Saturated, Indifferent };

const char* vi_case_name(ViCase c);

struct ViRow {
    int link_id = 0;
    double residual = 0.0;
    double flow = 0.0;
    double f_max = 0.0;
    ViCase expected = ViCase::Indifferent;
    bool pass = true;
};

struct ViReport {
    std::vector<ViRow> rows;
    bool all_pass = true;
};

// Classifies every link: residual < -tol expects zero flow, residual > tol
// expects a saturated link, |residual| <= tol admits any flow.
ViReport vi_report(const SupplyChainNetwork& net, const EvaluationReport& report,
                   double residual_tol = 1e-2, double flow_tol = 1e-2);

} // namespace vlopt::scnem
