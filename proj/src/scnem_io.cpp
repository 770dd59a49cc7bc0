#include "vlopt/scnem_io.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace vlopt::scnem {

namespace {

std::string file_stem(const std::string& path) {
    const std::size_t slash = path.find_last_of("/\\");
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    const std::size_t dot = base.find_last_of('.');
    if (dot != std::string::npos && dot > 0) base = base.substr(0, dot);
    return base;
}

CostCoeffs parse_coeffs(const TomlValue* v, const std::string& where) {
    CostCoeffs c;
    if (!v) return c;
    if (!v->is_table()) throw NetworkError(where + ": expected a table {a, b}");
    c.a = v->number_or("a", 0.0);
    c.b = v->number_or("b", 0.0);
    return c;
}

void check_version(const TomlValue& doc, const std::string& what) {
    const TomlValue* v = doc.get("version");
    if (!v) throw NetworkError(what + ": missing version key");
    if (v->as_int() != 1)
        throw NetworkError(what + ": unsupported version " +
                           std::to_string(v->as_int()));
}

std::string fmt4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

SupplyChainNetwork load_network(const TomlValue& doc, const std::string& fallback_name) {
    check_version(doc, "network document");
    SupplyChainNetwork net;
    net.name = doc.string_or("name", fallback_name);

    const TomlValue* spots = doc.get("spots");
    if (!spots || !spots->is_array())
        throw NetworkError("network document: missing [[spots]] entries");
    for (const TomlValue& sv : spots->as_array()) {
        Spot s;
        s.id = sv.at("id").as_string();
        s.role = role_from_name(sv.at("role").as_string());
        s.product = sv.at("product").as_string();
        s.fc = sv.number_or("fc", 0.0);
        s.vc = parse_coeffs(sv.get("vc"), "spot " + s.id + " vc");
        s.hc = parse_coeffs(sv.get("hc"), "spot " + s.id + " hc");
        s.tc = parse_coeffs(sv.get("tc"), "spot " + s.id + " tc");
        if (const TomlValue* caps = sv.get("caps")) {
            s.q_e_max = caps->number_or("q_e_max", 0.0);
            s.lambda_max = caps->number_or("lambda_max", 0.0);
        }
        if (const TomlValue* rv = sv.get("recipe")) {
            Recipe r;
            r.materials = rv->at("materials").as_string_array();
            r.ratios = rv->at("ratios").as_number_array();
            r.r_t = rv->number_or("r_t", 0.0);
            if (const TomlValue* hv = rv->get("material_hc")) {
                for (const TomlValue& t : hv->as_array())
                    r.material_hc.push_back(
                        parse_coeffs(&t, "spot " + s.id + " material_hc"));
            }
            s.recipe = std::move(r);
        }
        if (const TomlValue* mv = sv.get("market")) {
            MarketParams m;
            m.p_max = mv->at("p_max").as_number();
            m.a = mv->number_or("a", 0.0);
            m.b = mv->number_or("b", 0.0);
            s.market = m;
        }
        net.spots.push_back(std::move(s));
    }

    const TomlValue* links = doc.get("links");
    if (!links || !links->is_array())
        throw NetworkError("network document: missing [[links]] entries");
    for (const TomlValue& lv : links->as_array()) {
        Link l;
        l.id = static_cast<int>(lv.at("id").as_int());
        l.from = lv.at("from").as_string();
        l.to = lv.at("to").as_string();
        l.product = lv.at("product").as_string();
        l.a = lv.number_or("a", 0.0);
        l.b = lv.number_or("b", 0.0);
        l.c = lv.number_or("c", 0.0);
        l.f_max = lv.at("f_max").as_number();
        net.links.push_back(std::move(l));
    }
    std::sort(net.links.begin(), net.links.end(),
              [](const Link& a, const Link& b) { return a.id < b.id; });

    net.validate();
    return net;
}

SupplyChainNetwork load_network_file(const std::string& path) {
    return load_network(toml_parse_file(path), file_stem(path));
}

ScnemDecision load_solution(const TomlValue& doc, const SupplyChainNetwork& net) {
    check_version(doc, "solution document");
    if (const TomlValue* inst = doc.get("instance")) {
        if (inst->as_string() != net.name)
            throw NetworkError("solution is for instance '" + inst->as_string() +
                               "', network is '" + net.name + "'");
    }

    const auto require_table = [&](const char* key) -> const TomlValue::Table& {
        const TomlValue* t = doc.get(key);
        if (!t || !t->is_table())
            throw NetworkError(std::string("solution document: missing [") + key +
                               "] table");
        return t->as_table();
    };

    const TomlValue::Table& flows = require_table("flows");
    const TomlValue::Table& rates = require_table("rates");
    const TomlValue::Table& extractions = require_table("extractions");

    ScnemDecision d;
    d.flows.reserve(net.links.size());
    for (const Link& l : net.links) {
        const auto it = flows.find(std::to_string(l.id));
        if (it == flows.end())
            throw NetworkError("solution missing flow for link " + std::to_string(l.id));
        d.flows.push_back(it->second.as_number());
    }
    if (flows.size() != net.links.size())
        throw NetworkError("solution [flows] has entries for unknown links");

    const auto nm = net.non_market_indices();
    d.rates.reserve(nm.size());
    for (std::size_t i : nm) {
        const auto it = rates.find(net.spots[i].id);
        if (it == rates.end())
            throw NetworkError("solution missing rate for spot " + net.spots[i].id);
        d.rates.push_back(it->second.as_number());
    }
    if (rates.size() != nm.size())
        throw NetworkError("solution [rates] has entries for unknown spots");

    const auto sup = net.supplier_indices();
    d.extractions.reserve(sup.size());
    for (std::size_t i : sup) {
        const auto it = extractions.find(net.spots[i].id);
        if (it == extractions.end())
            throw NetworkError("solution missing extraction for supplier " +
                               net.spots[i].id);
        d.extractions.push_back(it->second.as_number());
    }
    if (extractions.size() != sup.size())
        throw NetworkError("solution [extractions] has entries for unknown suppliers");

    return d;
}

ScnemDecision load_solution_file(const std::string& path, const SupplyChainNetwork& net) {
    return load_solution(toml_parse_file(path), net);
}

std::string render_verify_text(const SupplyChainNetwork& net,
                               const EvaluationReport& report, const ViReport& vi) {
    std::ostringstream os;
    os << "instance: " << net.name << "\n";
    os << "objective: " << fmt17(report.objective) << "\n";
    os << "penalty:   " << fmt17(report.penalty) << "\n";
    os << "fitness:   " << fmt17(report.fitness) << "\n\n";

    os << "links (residual = buy price - transport - sell price):\n";
    os << "  id  from    to      product   flow        p_from^O    transport   "
          "p_to^E      residual    case         ok\n";
    for (std::size_t li = 0; li < report.links.size(); ++li) {
        const LinkRecord& lr = report.links[li];
        const Link& l = net.links[li];
        const ViRow& row = vi.rows[li];
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "  %-3d %-7s %-7s %-9s %-11.4f %-11.4f %-11.4f %-11.4f %-11.4f "
                      "%-12s %s\n",
                      l.id, l.from.c_str(), l.to.c_str(), l.product.c_str(), lr.flow,
                      lr.from_price, lr.transport, lr.to_price, lr.residual,
                      vi_case_name(row.expected), row.pass ? "yes" : "NO");
        os << buf;
    }

    os << "\nspots:\n";
    os << "  id      role          arrived     produced    sold        held        "
          "cost        p^O         p^E\n";
    for (std::size_t si = 0; si < net.spots.size(); ++si) {
        const Spot& sp = net.spots[si];
        const SpotState& st = report.states[si];
        double arrived_total = 0.0;
        for (const auto& [k, v] : st.arrived) arrived_total += v;
        const auto held_it = st.held.find(sp.product);
        const double held = held_it != st.held.end() ? held_it->second : 0.0;
        const auto buy_it = st.buying_price.find(
            sp.role == Role::Manufacturer && !st.buying_price.empty()
                ? st.buying_price.begin()->first
                : sp.product);
        const double buy = buy_it != st.buying_price.end() ? buy_it->second : 0.0;
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "  %-7s %-13s %-11.4f %-11.4f %-11.4f %-11.4f %-11.4f %-11s %-11s\n",
                      sp.id.c_str(), role_name(sp.role), arrived_total, st.produced,
                      st.sold, held, st.cost,
                      sp.role == Role::Market ? "-" : fmt4(st.selling_price).c_str(),
                      st.buying_price.empty() ? "-" : fmt4(buy).c_str());
        os << buf;
    }

    os << "\nresiduals " << (vi.all_pass ? "consistent" : "INCONSISTENT")
       << " with the no-trade/saturated/indifferent classification\n";
    return os.str();
}

std::string render_link_csv(const SupplyChainNetwork& net, const EvaluationReport& report,
                            const ViReport& vi) {
    std::ostringstream os;
    os << "link,from,to,product,flow,from_price,transport,to_price,residual,case,pass\n";
    for (std::size_t li = 0; li < report.links.size(); ++li) {
        const LinkRecord& lr = report.links[li];
        const Link& l = net.links[li];
        os << l.id << ',' << l.from << ',' << l.to << ',' << l.product << ','
           << fmt17(lr.flow) << ',' << fmt17(lr.from_price) << ',' << fmt17(lr.transport)
           << ',' << fmt17(lr.to_price) << ',' << fmt17(lr.residual) << ','
           << vi_case_name(vi.rows[li].expected) << ',' << (vi.rows[li].pass ? 1 : 0)
           << '\n';
    }
    return os.str();
}

std::string render_spot_csv(const SupplyChainNetwork& net,
                            const EvaluationReport& report) {
    std::ostringstream os;
    os << "spot,role,product,arrived,produced,sold,held,cost,selling_price,buying_price\n";
    for (std::size_t si = 0; si < net.spots.size(); ++si) {
        const Spot& sp = net.spots[si];
        const SpotState& st = report.states[si];
        double arrived_total = 0.0;
        for (const auto& [k, v] : st.arrived) arrived_total += v;
        const auto held_it = st.held.find(sp.product);
        const double held = held_it != st.held.end() ? held_it->second : 0.0;
        double buy = 0.0;
        if (!st.buying_price.empty())
            buy = sp.role == Role::Manufacturer
                      ? st.buying_price.begin()->second
                      : (st.buying_price.count(sp.product)
                             ? st.buying_price.at(sp.product)
                             : st.buying_price.begin()->second);
        os << sp.id << ',' << role_name(sp.role) << ',' << sp.product << ','
           << fmt17(arrived_total) << ',' << fmt17(st.produced) << ',' << fmt17(st.sold)
           << ',' << fmt17(held) << ',' << fmt17(st.cost) << ','
           << fmt17(st.selling_price) << ',' << fmt17(buy) << '\n';
    }
    return os.str();
}

std::string render_report_json(const SupplyChainNetwork& net,
                               const EvaluationReport& report, const ViReport& vi) {
    nlohmann::json j;
    j["instance"] = net.name;
    j["objective"] = report.objective;
    j["penalty"] = report.penalty;
    j["fitness"] = report.fitness;
    j["residuals_consistent"] = vi.all_pass;

    nlohmann::json links = nlohmann::json::array();
    for (std::size_t li = 0; li < report.links.size(); ++li) {
        const LinkRecord& lr = report.links[li];
        const Link& l = net.links[li];
        links.push_back({{"link", l.id},
                         {"from", l.from},
                         {"to", l.to},
                         {"product", l.product},
                         {"flow", lr.flow},
                         {"from_price", lr.from_price},
                         {"transport", lr.transport},
                         {"to_price", lr.to_price},
                         {"residual", lr.residual},
                         {"case", vi_case_name(vi.rows[li].expected)},
                         {"pass", vi.rows[li].pass}});
    }
    j["links"] = std::move(links);

    nlohmann::json spots = nlohmann::json::array();
    for (std::size_t si = 0; si < net.spots.size(); ++si) {
        const Spot& sp = net.spots[si];
        const SpotState& st = report.states[si];
        nlohmann::json s;
        s["spot"] = sp.id;
        s["role"] = role_name(sp.role);
        s["product"] = sp.product;
        s["arrived"] = st.arrived;
        s["held"] = st.held;
        s["produced"] = st.produced;
        s["sold"] = st.sold;
        s["cost"] = st.cost;
        if (sp.role != Role::Market) s["selling_price"] = st.selling_price;
        s["buying_price"] = st.buying_price;
        spots.push_back(std::move(s));
    }
    j["spots"] = std::move(spots);
    return j.dump(2) + "\n";
}

} // namespace vlopt::scnem
