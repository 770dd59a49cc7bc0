// Fixture-calibration helper for the bundled supply-chain solutions.
//
// The upstream reference listing prints flows, extractions, profit rates,
// and prices rounded to four decimals. Rounded profit rates reproduce the
// printed selling prices only approximately, and on links into markets the
// slack is amplified by (f_max - flow), so a mechanical transcription does
// not reproduce the reported objective values. This tool re-derives each
// profit rate exactly from the printed quantities:
//
//   - a conservation pass first removes rounding deficits (a spot selling a
//     few 1e-4 more than it holds) by raising supplier extractions to the
//     exact outbound sum and trimming the largest outbound flow elsewhere;
//   - spots selling straight to markets get the rate that makes their best
//     outbound market link break even exactly;
//   - every other non-market spot gets the rate that reproduces its printed
//     selling price (supplied in a [targets] table) to full precision.
//
// Usage: scn_pin_lambdas <instance.toml> <draft_solution.toml>
//   stdout: finished solution TOML (flows/extractions verbatim, rates pinned)
//   stderr: per-spot and per-link reproduction report
//
// The draft solution carries the printed rates in [rates] (used only as a
// fallback) and the printed selling prices in [targets].

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "vlopt/scnem.hpp"
#include "vlopt/scnem_io.hpp"

using namespace vlopt;
using namespace vlopt::scnem;

namespace {

double handled_quantity(const Spot& sp, const SpotState& st) {
    switch (sp.role) {
        case Role::Manufacturer:
            return st.produced;
        default: {
            const auto it = st.arrived.find(sp.product);
            return it != st.arrived.end() ? it->second : 0.0;
        }
    }
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::fprintf(stderr, "usage: scn_pin_lambdas <instance.toml> <draft.toml>\n");
        return 2;
    }
    const SupplyChainNetwork net = load_network_file(argv[1]);
    const TomlValue draft = toml_parse_file(argv[2]);
    ScnemDecision d = load_solution(draft, net);

    std::map<std::string, double> targets;
    if (const TomlValue* t = draft.get("targets"))
        for (const auto& [id, v] : t->as_table()) targets[id] = v.as_number();

    const EvalOptions opts; // defaults match the verify command
    const auto nm = net.non_market_indices();
    const auto sup = net.supplier_indices();

    // Non-market spots in tier order (upstream prices must be final before
    // a downstream cost is used).
    std::vector<std::size_t> order = nm;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return role_tier(net.spots[a].role) < role_tier(net.spots[b].role);
    });

    // Conservation repair. Four-decimal rounding in the printed flows can
    // leave a spot selling marginally more than it holds; the infeasibility
    // penalty amplifies even a 1e-4 deficit by 1e6, swamping the objective.
    // Walk upstream-first (so downstream arrivals are final when checked):
    // suppliers raise extraction to the exact outbound sum while it fits the
    // extraction cap; any other spot trims the excess off its largest
    // outbound flow.
    for (std::size_t si : order) {
        const Spot& sp = net.spots[si];
        const EvaluationReport rep0 = propagate(net, d, opts);
        const double avail = handled_quantity(sp, rep0.states[si]);
        double sold = 0.0;
        std::size_t biggest = net.links.size();
        for (std::size_t li = 0; li < net.links.size(); ++li) {
            if (net.links[li].from != sp.id) continue;
            sold += d.flows[li];
            if (biggest == net.links.size() || d.flows[li] > d.flows[biggest])
                biggest = li;
        }
        if (sold <= avail || biggest == net.links.size()) continue;
        const double excess = sold - avail;
        if (sp.role == Role::Supplier && sold <= sp.q_e_max) {
            std::size_t pos = 0;
            for (std::size_t j = 0; j < sup.size(); ++j)
                if (sup[j] == si) pos = j;
            std::fprintf(stderr,
                         "%-6s repair: extraction %.6f -> %.6f (outbound sum)\n",
                         sp.id.c_str(), d.extractions[pos], sold);
            d.extractions[pos] = sold;
            continue;
        }
        const double trimmed = std::max(0.0, d.flows[biggest] - excess);
        std::fprintf(stderr,
                     "%-6s repair: trim link %d flow %.6f -> %.6f (excess %.3e)\n",
                     sp.id.c_str(), net.links[biggest].id, d.flows[biggest],
                     trimmed, excess);
        d.flows[biggest] = trimmed;
    }

    for (std::size_t si : order) {
        const Spot& sp = net.spots[si];
        const EvaluationReport rep = propagate(net, d, opts);
        const SpotState& st = rep.states[si];
        const double handled = handled_quantity(sp, st);

        std::size_t rate_pos = 0;
        for (std::size_t j = 0; j < nm.size(); ++j)
            if (nm[j] == si) rate_pos = j;

        if (handled <= opts.quantity_floor) {
            std::fprintf(stderr, "%-6s idle (handled %.6g); rate pinned to 0\n",
                         sp.id.c_str(), handled);
            d.rates[rate_pos] = 0.0;
            continue;
        }

        // Choose the target selling price.
        double target = 0.0;
        bool from_market = false;
        for (std::size_t li = 0; li < net.links.size(); ++li) {
            const Link& l = net.links[li];
            if (l.from != sp.id) continue;
            const Spot& to = net.spot(l.to);
            if (to.role != Role::Market) continue;
            const double implied =
                rep.states[net.spot_index(l.to)].buying_price.at(l.product) -
                transport_cost(l, d.flows[li]);
            if (!from_market || implied > target) target = implied;
            from_market = true;
        }
        if (!from_market) {
            const auto it = targets.find(sp.id);
            if (it == targets.end()) {
                std::fprintf(stderr,
                             "%-6s has no market links and no [targets] entry\n",
                             sp.id.c_str());
                return 2;
            }
            target = it->second;
        }

        double lambda = target * handled / st.cost - 1.0;
        const char* note = from_market ? "market break-even" : "printed price";
        if (lambda < 0.0 || lambda > sp.lambda_max) {
            std::fprintf(stderr,
                         "%-6s WARNING rate %.6f outside [0, %.3f]; clamping "
                         "(target %.6f unreachable)\n",
                         sp.id.c_str(), lambda, sp.lambda_max, target);
            lambda = std::min(std::max(lambda, 0.0), sp.lambda_max);
        }
        d.rates[rate_pos] = lambda;

        const double achieved = st.cost / handled * (1.0 + lambda);
        const auto it = targets.find(sp.id);
        std::fprintf(stderr,
                     "%-6s rate %.17g (%s)  p^O achieved %.6f  printed %.6f  "
                     "diff %+.2e\n",
                     sp.id.c_str(), lambda, note, achieved,
                     it != targets.end() ? it->second : achieved,
                     it != targets.end() ? achieved - it->second : 0.0);
    }

    // Final report.
    const EvaluationReport rep = propagate(net, d, opts);
    const ViReport vi = vi_report(net, rep);
    std::fprintf(stderr, "\nobjective %.8g  penalty %.8g  fitness %.8g\n",
                 rep.objective, rep.penalty, rep.fitness);
    for (std::size_t li = 0; li < net.links.size(); ++li) {
        const LinkRecord& lr = rep.links[li];
        std::fprintf(stderr,
                     "  link %-3d f %-12.4f residual %+12.6f  %-11s %s\n",
                     lr.link_id, lr.flow, lr.residual,
                     vi_case_name(vi.rows[li].expected),
                     vi.rows[li].pass ? "ok" : "VIOLATED");
    }

    // Emit the finished solution document.
    std::printf("version = 1\n");
    std::printf("instance = \"%s\"\n\n[flows]\n", net.name.c_str());
    for (std::size_t li = 0; li < net.links.size(); ++li)
        std::printf("%d = %.17g\n", net.links[li].id, d.flows[li]);
    std::printf("\n[rates]\n");
    for (std::size_t j = 0; j < nm.size(); ++j)
        std::printf("%s = %.17g\n", net.spots[nm[j]].id.c_str(), d.rates[j]);
    std::printf("\n[extractions]\n");
    for (std::size_t j = 0; j < sup.size(); ++j)
        std::printf("%s = %.17g\n", net.spots[sup[j]].id.c_str(), d.extractions[j]);
    return 0;
}
