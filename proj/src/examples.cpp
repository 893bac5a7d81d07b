#include "ipls/examples.hpp"

#include <cmath>

#include "ipls/errors.hpp"

namespace ipls {

namespace {

ParametricSystem make_system(int n, const std::vector<std::string>& names,
                             const IntervalVector& p,
                             const std::vector<std::vector<std::string>>& A,
                             const std::vector<std::string>& b) {
    ParametricSystem sys;
    sys.n = n;
    sys.K = static_cast<int>(names.size());
    sys.names = names;
    sys.p = p;
    for (const auto& row : A) {
        std::vector<ExprEntry> r;
        for (const auto& src : row) r.push_back(ExprEntry{parse_expr(src, names), src});
        sys.A.push_back(std::move(r));
    }
    for (const auto& src : b) sys.b.push_back(ExprEntry{parse_expr(src, names), src});
    return sys;
}

PaperExample ex0() {
    PaperExample e;
    e.id = "ex0";
    e.description = "2x2 single-parameter motivating system, identity midpoint";
    e.system = make_system(2, {"p"}, {Interval(-1.0, 1.0)},
                           {{"1-0.5*p", "-p"}, {"0.5*p", "1+p"}}, {"0", "0"});
    return e;
}

PaperExample ex1() {
    PaperExample e;
    e.id = "ex1";
    e.description = "2x2 single-parameter system A(p)=[[p,2p],[2,1]], p in [1/2,7/2]";
    e.system = make_system(2, {"p"}, {Interval(0.5, 3.5)}, {{"p", "2*p"}, {"2", "1"}},
                           {"1", "1"});
    return e;
}

PaperExample ex2(double delta) {
    PaperExample e;
    e.id = "ex2";
    e.delta = delta;
    e.description = "3x3 three-parameter regularity study, p in [-delta,delta]^3";
    IntervalVector p(3, Interval(-delta, delta));
    e.system = make_system(3, {"p1", "p2", "p3"}, p,
                           {{"1+p1-p2", "-p1+p2", "1+p1"},
                            {"2+p1+p2", "-1-p1-p2+p3", "-1+p1-2*p3"},
                            {"1+p1", "-3-p1-2*p3", "6+p1+4*p3"}},
                           {"1", "1", "1"});
    return e;
}

PaperExample ex3() {
    PaperExample e;
    e.id = "ex3";
    e.description = "3x3 three-parameter system with parametric right-hand side";
    e.system = make_system(3, {"p1", "p2", "p3"},
                           {Interval(0.75, 1.25), Interval(0.5, 1.5), Interval(0.5, 1.5)},
                           {{"0.5-p2", "p1", "p1"}, {"p2", "-p2", "p3"}, {"p1", "p3", "1"}},
                           {"p2", "2*p2", "3*p2"});
    return e;
}

PaperExample okumura(double delta) {
    PaperExample e;
    e.id = "okumura";
    e.delta = delta;
    e.description = "5x5 resistive network, 9 conductances in [1-delta,1+delta]";
    std::vector<std::string> names;
    IntervalVector p;
    for (int k = 1; k <= 9; ++k) {
        names.push_back("p" + std::to_string(k));
        p.emplace_back(1.0 - delta, 1.0 + delta);
    }
    e.system = make_system(5, names, p,
                           {{"p1+p6", "-p6", "0", "0", "0"},
                            {"-p6", "p2+p6+p7", "-p7", "0", "0"},
                            {"0", "-p7", "p3+p7+p8", "-p8", "0"},
                            {"0", "0", "-p8", "p4+p8+p9", "-p9"},
                            {"0", "0", "0", "-p9", "p5+p9"}},
                           {"10", "0", "10", "0", "0"});
    return e;
}

PaperExample frame(double delta) {
    PaperExample e;
    e.id = "frame";
    e.delta = delta;
    e.description = "8x8 one-bay steel frame, 8 parameters at delta of worst-case uncertainty";
    const std::vector<std::string> names = {"Eb", "Ec", "Ib", "Ic", "Ab", "Ac", "al", "H"};
    const double nom[8] = {29e6, 29e6, 510.0, 272.0, 10.3, 14.4, 2.77461e8, 5305.5};
    const double unc[8] = {348e4, 348e4, 51.0, 27.2, 1.3, 1.44, 1.26504e8, 2203.5};
    IntervalVector p;
    for (int k = 0; k < 8; ++k)
        p.emplace_back(nom[k] - delta * unc[k], nom[k] + delta * unc[k]);

    const std::string e11 = "Ab*Eb/288+12*Ec*Ic/144^3";
    const std::string e13 = "6*Ec*Ic/144^2";
    const std::string e22 = "Ac*Ec/144+12*Eb*Ib/288^3";
    const std::string e24 = "6*Eb*Ib/288^2";
    const std::string e33 = "al+4*Ec*Ic/144";
    const std::string e44 = "al+4*Eb*Ib/288";
    const std::string e45 = "2*Eb*Ib/288";
    const std::string e55 = "al+4*Ec*Ic/144";
    const std::string nAbEb = "-Ab*Eb/288";
    const std::string nEbIb12 = "-12*Eb*Ib/288^3";
    const std::string ne24 = "-6*Eb*Ib/288^2";

    e.system = make_system(
        8, names, p,
        {{e11, "0", e13, "0", "0", nAbEb, "0", "0"},
         {"0", e22, "0", e24, e24, "0", nEbIb12, "0"},
         {e13, "0", e33, "-al", "0", "0", "0", "0"},
         {"0", e24, "-al", e44, e45, "0", ne24, "0"},
         {"0", e24, "0", e45, e55, "0", ne24, "-al"},
         {nAbEb, "0", "0", "0", "0", e11, "0", e13},
         {"0", nEbIb12, "0", ne24, ne24, "0", e22, ne24},
         {"0", "0", "0", "0", "-al", e13, ne24, e55}},
        {"H", "0", "0", "0", "0", "0", "0", "0"});
    return e;
}

PaperExample ac_circuit(double delta) {
    PaperExample e;
    e.id = "ac_circuit";
    e.delta = delta;
    e.description = "5-node AC circuit, realified to 10x10; 18 admittance parameters, "
                    "relative tolerance delta";

    // branch admittances y_j = g_j + i*b_j from R_j = 100 and the listed X_j
    double X[12] = {0, 20, 20, 30, -300, 20, 0, 20, 0, 0, -400, 0};
    double g[12], b[12];
    for (int j = 1; j <= 11; ++j) {
        double den = 100.0 * 100.0 + X[j] * X[j];
        g[j] = 100.0 / den;
        b[j] = -X[j] / den;
    }

    std::vector<std::string> names;
    IntervalVector p;
    for (int j = 1; j <= 11; ++j) {
        names.push_back("g" + std::to_string(j));
        p.emplace_back(g[j] - delta * std::abs(g[j]), g[j] + delta * std::abs(g[j]));
    }
    for (int j = 1; j <= 11; ++j) {
        if (b[j] == 0.0) continue;
        names.push_back("b" + std::to_string(j));
        p.emplace_back(b[j] - delta * std::abs(b[j]), b[j] + delta * std::abs(b[j]));
    }

    auto has_b = [&](int j) { return b[j] != 0.0; };
    auto sum_terms = [&](const char* prefix, std::initializer_list<int> js, bool im) {
        std::string s;
        for (int j : js) {
            if (im && !has_b(j)) continue;
            if (!s.empty()) s += "+";
            s += prefix + std::to_string(j);
        }
        return s.empty() ? std::string("0") : s;
    };
    auto neg_terms = [&](const char* prefix, std::initializer_list<int> js, bool im) {
        std::string s;
        for (int j : js) {
            if (im && !has_b(j)) continue;
            s += "-" + std::string(prefix) + std::to_string(j);
        }
        return s.empty() ? std::string("0") : s;
    };

    std::vector<std::vector<std::string>> Are(5, std::vector<std::string>(5, "0"));
    std::vector<std::vector<std::string>> Aim(5, std::vector<std::string>(5, "0"));
    const std::initializer_list<int> rows[5] = {
        {1, 3, 6}, {2, 3, 4, 5}, {4, 5, 7, 10}, {7, 8, 9}, {6, 9, 11}};
    for (int i = 0; i < 5; ++i) {
        Are[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] =
            sum_terms("g", rows[i], false);
        Aim[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] =
            sum_terms("b", rows[i], true);
    }
    struct Off {
        int i, j;
        std::initializer_list<int> terms;
    };
    const Off offd[5] = {{0, 1, {3}}, {0, 4, {6}}, {1, 2, {4, 5}}, {2, 3, {7}}, {3, 4, {9}}};
    for (const Off& o : offd) {
        Are[static_cast<std::size_t>(o.i)][static_cast<std::size_t>(o.j)] =
            neg_terms("g", o.terms, false);
        Are[static_cast<std::size_t>(o.j)][static_cast<std::size_t>(o.i)] =
            Are[static_cast<std::size_t>(o.i)][static_cast<std::size_t>(o.j)];
        Aim[static_cast<std::size_t>(o.i)][static_cast<std::size_t>(o.j)] =
            neg_terms("b", o.terms, true);
        Aim[static_cast<std::size_t>(o.j)][static_cast<std::size_t>(o.i)] =
            Aim[static_cast<std::size_t>(o.i)][static_cast<std::size_t>(o.j)];
    }

    // source currents: e1 = e2 = 100, e5 = e7 = 10
    std::vector<std::string> bre = {"100*g1", "100*g2-10*g5", "10*g5+10*g7", "-10*g7", "0"};
    std::vector<std::string> bim = {"100*b1", "100*b2-10*b5", "10*b5+10*b7", "-10*b7", "0"};

    auto entries = [&](const std::vector<std::vector<std::string>>& g5x5) {
        std::vector<std::vector<ExprEntry>> out;
        for (const auto& row : g5x5) {
            std::vector<ExprEntry> r;
            for (const auto& src : row) r.push_back(ExprEntry{parse_expr(src, names), src});
            out.push_back(std::move(r));
        }
        return out;
    };
    auto ventries = [&](const std::vector<std::string>& v) {
        std::vector<ExprEntry> out;
        for (const auto& src : v) out.push_back(ExprEntry{parse_expr(src, names), src});
        return out;
    };

    e.system = complex_to_real(entries(Are), entries(Aim), ventries(bre), ventries(bim), p,
                               names);
    return e;
}

}  // namespace

std::vector<std::string> example_ids() {
    return {"ex0", "ex1", "ex2", "ex3", "okumura", "ac_circuit", "frame"};
}

PaperExample build_example(const std::string& id, std::optional<double> delta) {
    if (id == "ex0") return ex0();
    if (id == "ex1") return ex1();
    if (id == "ex2") return ex2(delta.value_or(0.5));
    if (id == "ex3") return ex3();
    if (id == "okumura") return okumura(delta.value_or(0.3));
    if (id == "ac_circuit") return ac_circuit(delta.value_or(0.25));
    if (id == "frame") return frame(delta.value_or(0.5));
    throw UnknownExample("unknown example id: " + id);
}

}  // namespace ipls
