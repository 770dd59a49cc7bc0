#include "vlopt/benchmarks.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace vlopt::bench {

using std::numbers::pi;

double penalized_u(double x, double a, double k, double m) {
    if (x > a) return k * std::pow(x - a, m);
    if (x < -a) return k * std::pow(-x - a, m);
    return 0.0;
}

// ------------------------------------------------------------ primitives ---

namespace {

double sphere(const Vec& x) { return (x * x).sum(); }

double schwefel_2_22(const Vec& x) {
    const Vec a = x.abs();
    return a.sum() + a.prod();
}

double schwefel_1_2(const Vec& x) {
    double total = 0.0, prefix = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        prefix += x[i];
        total += prefix * prefix;
    }
    return total;
}

double max_abs(const Vec& x) { return x.abs().maxCoeff(); }

double rosenbrock(const Vec& x) {
    double total = 0.0;
    for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
        const double a = x[i + 1] - x[i] * x[i];
        const double b = x[i] - 1.0;
        total += 100.0 * a * a + b * b;
    }
    return total;
}

double step(const Vec& x) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double s = std::floor(x[i] + 0.5);
        total += s * s;
    }
    return total;
}

double quartic_core(const Vec& x) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double sq = x[i] * x[i];
        total += static_cast<double>(i + 1) * sq * sq;
    }
    return total;
}

double schwefel_sine(const Vec& x) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        total += -x[i] * std::sin(std::sqrt(std::abs(x[i])));
    }
    return total;
}

double rastrigin(const Vec& x) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        total += x[i] * x[i] - 10.0 * std::cos(2.0 * pi * x[i]) + 10.0;
    }
    return total;
}

double ackley(const Vec& x) {
    const double n = static_cast<double>(x.size());
    const double rms = std::sqrt((x * x).sum() / n);
    double cos_mean = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) cos_mean += std::cos(2.0 * pi * x[i]);
    cos_mean /= n;
    return -20.0 * std::exp(-0.2 * rms) - std::exp(cos_mean) + 20.0 + std::numbers::e;
}

double griewank(const Vec& x) {
    double sum = 0.0, prod = 1.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        sum += x[i] * x[i] / 4000.0;
        prod *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
    }
    return sum - prod + 1.0;
}

double penalized_1(const Vec& x) {
    const Eigen::Index n = x.size();
    auto y = [&](Eigen::Index i) { return 1.0 + (x[i] + 1.0) / 4.0; };
    double core = 10.0 * std::pow(std::sin(pi * y(0)), 2);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        const double d = y(i) - 1.0;
        core += d * d * (1.0 + 10.0 * std::pow(std::sin(pi * y(i + 1)), 2));
    }
    const double dn = y(n - 1) - 1.0;
    core += dn * dn;
    double pen = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) pen += penalized_u(x[i], 10.0, 100.0, 4.0);
    return (pi / static_cast<double>(n)) * core + pen;
}

double penalized_2(const Vec& x) {
    const Eigen::Index n = x.size();
    double core = std::pow(std::sin(3.0 * pi * x[0]), 2);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        const double d = x[i] - 1.0;
        core += d * d * (1.0 + std::pow(std::sin(3.0 * pi * x[i + 1]), 2));
    }
    const double dn = x[n - 1] - 1.0;
    core += dn * dn * (1.0 + std::pow(std::sin(2.0 * pi * x[n - 1]), 2));
    double pen = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) pen += penalized_u(x[i], 5.0, 100.0, 4.0);
    return 0.1 * core + pen;
}

double foxholes(const Vec& x) {
    static const double kA1[5] = {-32, -16, 0, 16, 32};
    double s = 0.0;
    for (int j = 0; j < 25; ++j) {
        const double a1 = kA1[j % 5];
        const double a2 = kA1[j / 5];
        const double d1 = x[0] - a1;
        const double d2 = x[1] - a2;
        s += 1.0 / (static_cast<double>(j + 1) + std::pow(d1, 6) + std::pow(d2, 6));
    }
    return 1.0 / (1.0 / 500.0 + s);
}

double kowalik(const Vec& x) {
    static const double kA[11] = {0.1957, 0.1947, 0.1735, 0.1600, 0.0844, 0.0627,
                                  0.0456, 0.0342, 0.0323, 0.0235, 0.0246};
    static const double kBInv[11] = {0.25, 0.5, 1, 2, 4, 6, 8, 10, 12, 14, 16};
    double total = 0.0;
    for (int i = 0; i < 11; ++i) {
        const double b = 1.0 / kBInv[i];
        const double num = x[0] * (b * b + b * x[1]);
        const double den = b * b + b * x[2] + x[3];
        const double d = kA[i] - num / den;
        total += d * d;
    }
    return total;
}

double camel6(const Vec& x) {
    const double x1 = x[0], x2 = x[1];
    return 4 * x1 * x1 - 2.1 * std::pow(x1, 4) + std::pow(x1, 6) / 3.0 + x1 * x2 -
           4 * x2 * x2 + 4 * std::pow(x2, 4);
}

double branin(const Vec& x) {
    const double b = 5.1 / (4.0 * pi * pi);
    const double c = 5.0 / pi;
    const double t = 1.0 / (8.0 * pi);
    const double d = x[1] - b * x[0] * x[0] + c * x[0] - 6.0;
    return d * d + 10.0 * (1.0 - t) * std::cos(x[0]) + 10.0;
}

double goldstein_price(const Vec& x) {
    const double x1 = x[0], x2 = x[1];
    const double t1 =
        1.0 + std::pow(x1 + x2 + 1.0, 2) *
                  (19 - 14 * x1 + 3 * x1 * x1 - 14 * x2 + 6 * x1 * x2 + 3 * x2 * x2);
    const double t2 =
        30.0 + std::pow(2 * x1 - 3 * x2, 2) *
                   (18 - 32 * x1 + 12 * x1 * x1 + 48 * x2 - 36 * x1 * x2 + 27 * x2 * x2);
    return t1 * t2;
}

double hartmann3(const Vec& x) {
    static const double kA[4][3] = {{3, 10, 30}, {0.1, 10, 35}, {3, 10, 30}, {0.1, 10, 35}};
    static const double kC[4] = {1, 1.2, 3, 3.2};
    static const double kP[4][3] = {{0.3689, 0.1170, 0.2673},
                                    {0.4699, 0.4387, 0.7470},
                                    {0.1091, 0.8732, 0.5547},
                                    {0.03815, 0.5743, 0.8828}};
    double total = 0.0;
    for (int i = 0; i < 4; ++i) {
        double e = 0.0;
        for (int j = 0; j < 3; ++j) e += kA[i][j] * std::pow(x[j] - kP[i][j], 2);
        total -= kC[i] * std::exp(-e);
    }
    return total;
}

double hartmann6(const Vec& x) {
    static const double kA[4][6] = {{10, 3, 17, 3.5, 1.7, 8},
                                    {0.05, 10, 17, 0.1, 8, 14},
                                    {3, 3.5, 1.7, 10, 17, 8},
                                    {17, 8, 0.05, 10, 0.1, 14}};
    static const double kC[4] = {1, 1.2, 3, 3.2};
    static const double kP[4][6] = {{0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
                                    {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
                                    {0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650},
                                    {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381}};
    double total = 0.0;
    for (int i = 0; i < 4; ++i) {
        double e = 0.0;
        for (int j = 0; j < 6; ++j) e += kA[i][j] * std::pow(x[j] - kP[i][j], 2);
        total -= kC[i] * std::exp(-e);
    }
    return total;
}

double shekel(const Vec& x, int m) {
    static const double kA[10][4] = {{4, 4, 4, 4}, {1, 1, 1, 1}, {8, 8, 8, 8},
                                     {6, 6, 6, 6}, {3, 7, 3, 7}, {2, 9, 2, 9},
                                     {5, 5, 3, 3}, {8, 1, 8, 1}, {6, 2, 6, 2},
                                     {7, 3.6, 7, 3.6}};
    static const double kC[10] = {0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5};
    double total = 0.0;
    for (int i = 0; i < m; ++i) {
        double d = kC[i];
        for (int j = 0; j < 4; ++j) d += std::pow(x[j] - kA[i][j], 2);
        total -= 1.0 / d;
    }
    return total;
}

// Weierstrass with the standard constants a=0.5, b=3, kmax=20 (composites).
double weierstrass(const Vec& x) {
    constexpr int kMax = 20;
    static const struct Pows {
        double a[kMax + 1], b[kMax + 1], base;
        Pows() {
            base = 0.0;
            for (int k = 0; k <= kMax; ++k) {
                a[k] = std::pow(0.5, k);
                b[k] = std::pow(3.0, k);
                base += a[k] * std::cos(2.0 * pi * b[k] * 0.5);
            }
        }
    } P;
    double total = 0.0;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        for (int k = 0; k <= kMax; ++k) {
            total += P.a[k] * std::cos(2.0 * pi * P.b[k] * (x[j] + 0.5));
        }
    }
    return total - static_cast<double>(x.size()) * P.base;
}

Vec vec_of(std::initializer_list<double> xs) {
    Vec v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

} // namespace

// ---------------------------------------------------------------- catalog ---

const std::vector<std::string>& all_ids() {
    static const std::vector<std::string> kIds = [] {
        std::vector<std::string> v;
        for (int i = 1; i <= 29; ++i) v.push_back("F" + std::to_string(i));
        return v;
    }();
    return kIds;
}

BenchmarkSpec spec(const std::string& id) {
    // Frozen oracle values: every non-trivial f_min below was evaluated
    // independently (high-precision reimplementation of the canonical
    // forms) before being recorded here.
    const Vec zeros30 = Vec::Zero(30);
    if (id == "F1") return {id, 30, -100, 100, 0.0, false, zeros30};
    if (id == "F2") return {id, 30, -10, 10, 0.0, false, zeros30};
    if (id == "F3") return {id, 30, -100, 100, 0.0, false, zeros30};
    if (id == "F4") return {id, 30, -100, 100, 0.0, false, zeros30};
    if (id == "F5") return {id, 30, -30, 30, 0.0, false, Vec::Ones(30)};
    if (id == "F6") return {id, 30, -100, 100, 0.0, false, zeros30};
    if (id == "F7") return {id, 30, -1.28, 1.28, 0.0, true, Vec()};
    if (id == "F8")
        return {id, 30, -500, 500, -12569.486618173014, false,
                Vec::Constant(30, 420.9687462275036)};
    if (id == "F9") return {id, 30, -5.12, 5.12, 0.0, false, zeros30};
    if (id == "F10") return {id, 30, -32, 32, 0.0, false, zeros30};
    if (id == "F11") return {id, 30, -512, 512, 0.0, false, zeros30};
    if (id == "F12") return {id, 30, -50, 50, 0.0, false, Vec::Constant(30, -1.0)};
    if (id == "F13") return {id, 30, -50, 50, 0.0, false, Vec::Ones(30)};
    if (id == "F14")
        return {id, 2, -65.536, 65.536, 0.9980038388186492, false, vec_of({-32, -32})};
    if (id == "F15")
        return {id, 4, -5, 5, 0.00030748598780560557, false,
                vec_of({0.19283345, 0.19083624, 0.1231173, 0.13576599})};
    if (id == "F16")
        return {id, 2, -5, 5, -1.031628453489877, false,
                vec_of({0.08984201368301331, -0.7126564032704135})};
    if (id == "F17")
        return {id, 2, -5, 5, 0.39788735772973816, false, vec_of({pi, 2.275})};
    if (id == "F18") return {id, 2, -2, 2, 3.0, false, vec_of({0, -1})};
    if (id == "F19")
        return {id, 3, 0, 1, -3.8627821478207554, false,
                vec_of({0.11461433, 0.55564885, 0.85254695})};
    if (id == "F20")
        return {id, 6, 0, 1, -3.322368011415515, false,
                vec_of({0.20168951, 0.15001069, 0.47687397, 0.27533243, 0.31165162,
                        0.65730054})};
    if (id == "F21")
        return {id, 4, 0, 10, -10.153199679058229, false,
                vec_of({4.00003715, 4.00013328, 4.00003715, 4.00013328})};
    if (id == "F22")
        return {id, 4, 0, 10, -10.402940566818662, false,
                vec_of({4.00057291, 4.00068937, 3.99948971, 3.99960616})};
    if (id == "F23")
        return {id, 4, 0, 10, -10.536409816692046, false,
                vec_of({4.00074653, 4.00059293, 3.9996634, 3.9995098})};
    if (id == "F24" || id == "F25" || id == "F26" || id == "F27" || id == "F28" ||
        id == "F29") {
        // Composites: global minimum 0 at the first shift optimum.
        CompositeSpec cs = make_composite_spec(id);
        Vec opt = cs.shifts.row(0).transpose().array();
        return {id, 10, -5, 5, 0.0, false, opt};
    }
    throw std::invalid_argument("unknown benchmark id: " + id);
}

Problem make(const std::string& id, std::uint64_t noise_seed) {
    BenchmarkSpec s = spec(id);
    Problem p;
    p.name = s.id;
    p.dimension = s.dimension;
    p.bounds = Bounds::uniform_box(s.dimension, s.lower, s.upper);
    p.stochastic = s.stochastic;

    if (id == "F1") p.fitness = sphere;
    else if (id == "F2") p.fitness = schwefel_2_22;
    else if (id == "F3") p.fitness = schwefel_1_2;
    else if (id == "F4") p.fitness = max_abs;
    else if (id == "F5") p.fitness = rosenbrock;
    else if (id == "F6") p.fitness = step;
    else if (id == "F7") {
        auto noise = std::make_shared<SeededRng>(noise_seed);
        p.fitness = [noise](const Vec& x) { return quartic_core(x) + noise->uniform(); };
    } else if (id == "F8") p.fitness = schwefel_sine;
    else if (id == "F9") p.fitness = rastrigin;
    else if (id == "F10") p.fitness = ackley;
    else if (id == "F11") p.fitness = griewank;
    else if (id == "F12") p.fitness = penalized_1;
    else if (id == "F13") p.fitness = penalized_2;
    else if (id == "F14") p.fitness = foxholes;
    else if (id == "F15") p.fitness = kowalik;
    else if (id == "F16") p.fitness = camel6;
    else if (id == "F17") p.fitness = branin;
    else if (id == "F18") p.fitness = goldstein_price;
    else if (id == "F19") p.fitness = hartmann3;
    else if (id == "F20") p.fitness = hartmann6;
    else if (id == "F21") p.fitness = [](const Vec& x) { return shekel(x, 5); };
    else if (id == "F22") p.fitness = [](const Vec& x) { return shekel(x, 7); };
    else if (id == "F23") p.fitness = [](const Vec& x) { return shekel(x, 10); };
    else {
        auto cs = std::make_shared<CompositeSpec>(make_composite_spec(id));
        p.fitness = [cs](const Vec& x) { return evaluate_composite(*cs, x); };
    }
    return p;
}

// -------------------------------------------------------------- composites ---

Eigen::MatrixXd generate_composite_shifts() {
    // 6 composite functions x 10 components, each a 10-d shift optimum drawn
    // uniformly from [-5, 5]. One fixed stream; row-major draw order.
    SeededRng rng(kCompositeShiftSeed);
    Eigen::MatrixXd m(60, 10);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            m(r, c) = rng.uniform(-5.0, 5.0);
        }
    }
    return m;
}

std::string render_shift_csv(const Eigen::MatrixXd& shifts) {
    std::ostringstream out;
    out << "# composite shift optima; uniform[-5,5]; seed=" << kCompositeShiftSeed
        << "; row order F24..F29 x components 1..10\n";
    out << "function,component";
    for (int d = 0; d < 10; ++d) out << ",x" << d;
    out << "\n";
    char buf[32];
    for (Eigen::Index r = 0; r < shifts.rows(); ++r) {
        out << "F" << (24 + r / 10) << "," << (r % 10 + 1);
        for (Eigen::Index c = 0; c < shifts.cols(); ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", shifts(r, c));
            out << "," << buf;
        }
        out << "\n";
    }
    return out.str();
}

Eigen::MatrixXd load_shift_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open shift data: " + path);
    Eigen::MatrixXd m(60, 10);
    std::string line;
    Eigen::Index r = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("function", 0) == 0) continue;
        if (r >= 60) throw std::runtime_error("shift data has too many rows: " + path);
        std::istringstream ss(line);
        std::string cell;
        std::getline(ss, cell, ','); // function id
        std::getline(ss, cell, ','); // component index
        for (Eigen::Index c = 0; c < 10; ++c) {
            if (!std::getline(ss, cell, ','))
                throw std::runtime_error("short shift row in " + path);
            m(r, c) = std::stod(cell);
        }
        ++r;
    }
    if (r != 60) throw std::runtime_error("shift data has too few rows: " + path);
    return m;
}

CompositeSpec make_composite_spec(const std::string& id) {
    int idx = -1;
    if (id == "F24") idx = 0;
    else if (id == "F25") idx = 1;
    else if (id == "F26") idx = 2;
    else if (id == "F27") idx = 3;
    else if (id == "F28") idx = 4;
    else if (id == "F29") idx = 5;
    else throw std::invalid_argument("not a composite benchmark: " + id);

    CompositeSpec cs;
    cs.id = id;
    cs.shifts = generate_composite_shifts().middleRows(idx * 10, 10);
    cs.sigma.assign(10, 1.0);
    cs.bias.resize(10);
    for (int i = 0; i < 10; ++i) cs.bias[i] = 100.0 * i;

    auto fill = [&](const std::vector<std::function<double(const Vec&)>>& comps,
                    std::vector<double> lambda) {
        cs.components = comps;
        cs.lambda = std::move(lambda);
    };

    const std::function<double(const Vec&)> fS = sphere, fG = griewank, fA = ackley,
                                            fR = rastrigin, fW = weierstrass;
    if (idx == 0) {
        fill(std::vector<std::function<double(const Vec&)>>(10, fS),
             std::vector<double>(10, 5.0 / 100.0));
    } else if (idx == 1) {
        fill(std::vector<std::function<double(const Vec&)>>(10, fG),
             std::vector<double>(10, 5.0 / 100.0));
    } else if (idx == 2) {
        fill(std::vector<std::function<double(const Vec&)>>(10, fG),
             std::vector<double>(10, 1.0));
    } else if (idx == 3) {
        fill({fA, fA, fR, fR, fW, fW, fG, fG, fS, fS},
             {5.0 / 32, 5.0 / 32, 1, 1, 5.0 / 0.5, 5.0 / 0.5, 5.0 / 100, 5.0 / 100,
              5.0 / 100, 5.0 / 100});
    } else if (idx == 4) {
        fill({fR, fR, fW, fW, fG, fG, fA, fA, fS, fS},
             {1.0 / 5, 1.0 / 5, 5.0 / 0.5, 5.0 / 0.5, 5.0 / 100, 5.0 / 100, 5.0 / 32,
              5.0 / 32, 5.0 / 100, 5.0 / 100});
    } else {
        cs.sigma = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
        fill({fR, fR, fW, fW, fG, fG, fA, fA, fS, fS},
             {0.1 * 1.0 / 5, 0.2 * 1.0 / 5, 0.3 * 5.0 / 0.5, 0.4 * 5.0 / 0.5,
              0.5 * 5.0 / 100, 0.6 * 5.0 / 100, 0.7 * 5.0 / 32, 0.8 * 5.0 / 32,
              0.9 * 5.0 / 100, 1.0 * 5.0 / 100});
    }

    // Per-component normalization constant |f_i(5*ones / lambda_i)|.
    cs.f_max.resize(10);
    for (int i = 0; i < 10; ++i) {
        const Vec probe = Vec::Constant(10, 5.0 / cs.lambda[i]);
        cs.f_max[i] = std::abs(cs.components[i](probe));
    }
    return cs;
}

double evaluate_composite(const CompositeSpec& spec, const Vec& x) {
    const int n = static_cast<int>(spec.components.size());
    const double dim = static_cast<double>(x.size());

    // Distance-based weights to the shifted optima.
    std::vector<double> w(n);
    int nearest = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const Vec diff = x - spec.shifts.row(i).transpose().array();
        const double d2 = (diff * diff).sum();
        w[i] = std::exp(-d2 / (2.0 * dim * spec.sigma[i] * spec.sigma[i]));
        if (d2 < best_d2) {
            best_d2 = d2;
            nearest = i;
        }
    }
    const double wmax = *std::max_element(w.begin(), w.end());
    const double damp = 1.0 - std::pow(wmax, 10);
    double wsum = 0.0;
    for (int i = 0; i < n; ++i) {
        if (w[i] != wmax) w[i] *= damp;
        wsum += w[i];
    }
    if (wsum <= 0.0) {
        // All weights underflowed (tight sigma, far point): fall back to the
        // nearest component alone.
        std::fill(w.begin(), w.end(), 0.0);
        w[nearest] = 1.0;
        wsum = 1.0;
    }

    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        if (w[i] == 0.0) continue;
        const Vec z = (x - spec.shifts.row(i).transpose().array()) / spec.lambda[i];
        const double fi = spec.components[i](z);
        const double fi_norm = 2000.0 * fi / spec.f_max[i];
        total += (w[i] / wsum) * (fi_norm + spec.bias[i]);
    }
    return total;
}

} // namespace vlopt::bench
