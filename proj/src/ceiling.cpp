// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#include "rotlab/ceiling.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "rotlab/errors.hpp"

namespace rotlab {

namespace {

double frac_pos(double x) {
    double f = x - std::floor(x);
    return f;
}

}  // namespace

CeilingSpec CeilingSpec::log_single(double a, double A, double B, double offset,
                                    unsigned bits) {
    CeilingSpec s;
    s.model = CeilingModel::Log;
    s.offset = offset;
    s.sing.push_back({Fixed::from_double(frac_pos(a), bits), frac_pos(a), A, B, -0.5, -0.5});
    s.validate();
    return s;
}

CeilingSpec CeilingSpec::power_single(double a, double gamma, double offset,
                                      unsigned bits) {
    CeilingSpec s;
    s.model = CeilingModel::Power;
    s.offset = offset;
    s.gamma = gamma;
    s.sing.push_back({Fixed::from_double(frac_pos(a), bits), frac_pos(a), 1.0, 0.0,
                      gamma, gamma});
    s.validate();
    return s;
}

void CeilingSpec::validate() const {
    if (sing.empty() && weak.empty() && offset <= 0)
        throw ConfigInvalid("ceiling must be positive: no singularities and offset <= 0");
    for (const auto& s : sing) {
        if (s.A < 0 || s.B < 0) throw ConfigInvalid("singularity strengths must be >= 0");
        if (model == CeilingModel::Power &&
            (s.gamma_right <= -1 || s.gamma_right >= 0 || s.gamma_left <= -1 ||
             s.gamma_left >= 0))
            throw ConfigInvalid("power exponents must lie in (-1, 0)");
    }
    for (const auto& w : weak) {
        if (w.strength < 0) throw ConfigInvalid("weak strengths must be >= 0");
        if (w.gamma <= -1 || w.gamma >= 0)
            throw ConfigInvalid("weak exponents must lie in (-1, 0)");
    }
    if (model == CeilingModel::Power && (gamma <= -1 || gamma >= 0))
        throw ConfigInvalid("power exponent must lie in (-1, 0)");
    if (offset < 0) throw ConfigInvalid("offset must be >= 0");
}

double CeilingSpec::strength_imbalance() const {
    double d = 0;
    for (const auto& s : sing) d += s.A - s.B;
    return d;
}

double CeilingSpec::max_strength() const {
    double m = 0;
    for (const auto& s : sing) m = std::max({m, s.A, s.B});
    for (const auto& w : weak) m = std::max(m, w.strength);
    return m;
}

double CeilingSpec::h(double u) const {
    return model == CeilingModel::Log ? -std::log(u) : std::pow(u, gamma);
}

double CeilingSpec::h_prime(double u) const {
    return model == CeilingModel::Log ? -1.0 / u : gamma * std::pow(u, gamma - 1.0);
}

double CeilingSpec::f_from_dists(const double* right, const double* left) const {
    double acc = offset;
    std::size_t j = 0;
    for (const auto& s : sing) {
        double ur = right[j], ul = left[j];
        ++j;
        if (model == CeilingModel::Log) {
            if (s.A != 0) acc -= s.A * std::log(ur);
            if (s.B != 0) acc -= s.B * std::log(ul);
        } else {
            if (s.A != 0) acc += s.A * std::pow(ur, s.gamma_right);
            if (s.B != 0) acc += s.B * std::pow(ul, s.gamma_left);
        }
    }
    for (const auto& w : weak) {
        double ur = right[j], ul = left[j];
        ++j;
        acc += w.strength * (std::pow(ur, w.gamma) + std::pow(ul, w.gamma));
    }
    return acc;
}

double CeilingSpec::f_prime_from_dists(const double* right, const double* left) const {
    double acc = 0;
    std::size_t j = 0;
    for (const auto& s : sing) {
        double ur = right[j], ul = left[j];
        ++j;
        if (model == CeilingModel::Log) {
            if (s.A != 0) acc -= s.A / ur;
            if (s.B != 0) acc += s.B / ul;
        } else {
            if (s.A != 0) acc += s.A * s.gamma_right * std::pow(ur, s.gamma_right - 1);
            if (s.B != 0) acc -= s.B * s.gamma_left * std::pow(ul, s.gamma_left - 1);
        }
    }
    for (const auto& w : weak) {
        double ur = right[j], ul = left[j];
        ++j;
        acc += w.strength * w.gamma *
               (std::pow(ur, w.gamma - 1) - std::pow(ul, w.gamma - 1));
    }
    return acc;
}

namespace {

// exact both-side distances of x to a set of positions, with the guard
void collect_dists(const CirclePoint& x, const CeilingSpec& spec,
                   std::vector<double>& right, std::vector<double>& left) {
    right.clear();
    left.clear();
    auto push = [&](const Fixed& a, std::size_t idx) {
        Fixed rel = x.pos().minus(a);
        double ur = rel.to_double();
        double ul = rel.complement().to_double();
        if (rel.is_zero()) ur = ul = 0.0;
        if (std::min(ur, ul) < spec.sigma_min)
            throw SingularityProximity(-1, idx, "evaluation within sigma_min of singularity");
        right.push_back(ur);
        left.push_back(ul);
    };
    std::size_t idx = 0;
    for (const auto& s : spec.sing) push(s.a, idx++);
    for (const auto& w : spec.weak) push(w.a, idx++);
}

}  // namespace

double CeilingSpec::eval_f(const CirclePoint& x) const {
    std::vector<double> r, l;
    collect_dists(x, *this, r, l);
    return f_from_dists(r.data(), l.data());
}

double CeilingSpec::eval_f_prime(const CirclePoint& x) const {
    std::vector<double> r, l;
    collect_dists(x, *this, r, l);
    return f_prime_from_dists(r.data(), l.data());
}

double CeilingSpec::integral_f() const {
    double acc = offset;
    for (const auto& s : sing) {
        if (model == CeilingModel::Log)
            acc += s.A + s.B;  // integral of -ln over (0,1) is 1
        else
            acc += s.A / (1.0 + s.gamma_right) + s.B / (1.0 + s.gamma_left);
    }
    for (const auto& w : weak) acc += 2.0 * w.strength / (1.0 + w.gamma);
    return acc;
}

double CeilingSpec::inf_f(std::size_t grid) const {
    // f is smooth between singularities; coarse grid plus golden-section
    // refinement around the best cell.
    auto value = [&](double x) {
        double acc = offset;
        for (const auto& s : sing) {
            double ur = frac_pos(x - s.a_dbl), ul = 1.0 - ur;
            if (ur <= 0 || ul <= 0) return HUGE_VAL;
            if (model == CeilingModel::Log)
                acc += -s.A * std::log(ur) - s.B * std::log(ul);
            else
                acc += s.A * std::pow(ur, s.gamma_right) + s.B * std::pow(ul, s.gamma_left);
        }
        for (const auto& w : weak) {
            double ur = frac_pos(x - w.a_dbl), ul = 1.0 - ur;
            if (ur <= 0 || ul <= 0) return HUGE_VAL;
            acc += w.strength * (std::pow(ur, w.gamma) + std::pow(ul, w.gamma));
        }
        return acc;
    };
    double best = HUGE_VAL, bx = 0.5;
    for (std::size_t i = 0; i < grid; ++i) {
        double x = (double(i) + 0.5) / double(grid);
        double v = value(x);
        if (v < best) {
            best = v;
            bx = x;
        }
    }
    double lo = bx - 1.0 / double(grid), hi = bx + 1.0 / double(grid);
    for (int it = 0; it < 200; ++it) {
        double m1 = lo + (hi - lo) * 0.382, m2 = lo + (hi - lo) * 0.618;
        double v1 = value(m1), v2 = value(m2);
        best = std::min({best, v1, v2});
        if (v1 < v2)
            hi = m2;
        else
            lo = m1;
    }
    // the infimum can live in a one-sided limit at a singularity whose
    // strength vanishes on that side; grids cannot see it
    auto side_limits = [&](double a) {
        for (int side = 0; side < 2; ++side) {
            double lim = offset;
            for (const auto& s : sing) {
                double ur, ul;
                if (s.a_dbl == a) {
                    // approaching a from the left: {x-a} -> 1, {a-x} -> 0+
                    // approaching from the right: {x-a} -> 0+, {a-x} -> 1
                    ur = side == 0 ? 1.0 : 0.0;
                    ul = side == 0 ? 0.0 : 1.0;
                } else {
                    double d = frac_pos(a - s.a_dbl);
                    ur = d;
                    ul = 1.0 - d;
                }
                auto one = [&](double strength, double u, double g) {
                    if (strength == 0) return 0.0;
                    if (u == 0.0) return HUGE_VAL;
                    return model == CeilingModel::Log ? -strength * std::log(u)
                                                      : strength * std::pow(u, g);
                };
                lim += one(s.A, ur, s.gamma_right) + one(s.B, ul, s.gamma_left);
                if (lim == HUGE_VAL) break;
            }
            for (const auto& w : weak) {
                if (lim == HUGE_VAL || w.strength == 0) continue;
                double ur = w.a_dbl == a ? (side == 0 ? 1.0 : 0.0) : frac_pos(a - w.a_dbl);
                double ul = w.a_dbl == a ? (side == 0 ? 0.0 : 1.0) : 1.0 - ur;
                if (ur == 0.0 || ul == 0.0)
                    lim = HUGE_VAL;
                else
                    lim += w.strength * (std::pow(ur, w.gamma) + std::pow(ul, w.gamma));
            }
            best = std::min(best, lim);
        }
    };
    for (const auto& s : sing) side_limits(s.a_dbl);
    for (const auto& w : weak) side_limits(w.a_dbl);
    return best;
}

double CeilingSpec::derivative_bound_H(std::size_t grid) const {
    // ratio |f'| / sum_i (-h'({x-a_i}) - h'({a_i-x})) over all singular
    // positions; continuous away from the a_i with limits A_i (right) and B_i
    // (left) there, so the certified bound is the grid sup joined with those
    // limits, inflated slightly.
    auto denom = [&](double x) {
        double acc = 0;
        for (const auto& s : sing) {
            double ur = frac_pos(x - s.a_dbl), ul = 1.0 - ur;
            acc += -h_prime(ur) - h_prime(ul);
        }
        for (const auto& w : weak) {
            double ur = frac_pos(x - w.a_dbl), ul = 1.0 - ur;
            acc += -h_prime(ur) - h_prime(ul);
        }
        return acc;
    };
    auto fprime = [&](double x) {
        double acc = 0;
        for (const auto& s : sing) {
            double ur = frac_pos(x - s.a_dbl), ul = 1.0 - ur;
            if (model == CeilingModel::Log)
                acc += -s.A / ur + s.B / ul;
            else
                acc += s.A * s.gamma_right * std::pow(ur, s.gamma_right - 1) -
                       s.B * s.gamma_left * std::pow(ul, s.gamma_left - 1);
        }
        for (const auto& w : weak) {
            double ur = frac_pos(x - w.a_dbl), ul = 1.0 - ur;
            acc += w.strength * w.gamma *
                   (std::pow(ur, w.gamma - 1) - std::pow(ul, w.gamma - 1));
        }
        return acc;
    };
    if (k_total() == 0) return 1.0;
    double sup = 0;
    for (std::size_t i = 0; i < grid; ++i) {
        double x = (double(i) + 0.5) / double(grid);
        double d = denom(x);
        if (d <= 0) continue;
        sup = std::max(sup, std::fabs(fprime(x)) / d);
    }
    for (const auto& s : sing) sup = std::max({sup, s.A, s.B});
    for (const auto& w : weak) sup = std::max(sup, w.strength);
    return sup * 1.02 + 1e-12;
}

std::string CeilingSpec::to_json() const {
    nlohmann::json j;
    j["model"] = model == CeilingModel::Log ? "log" : "power";
    j["offset"] = offset;
    if (model == CeilingModel::Power) j["gamma"] = gamma;
    auto arr = nlohmann::json::array();
    for (const auto& s : sing) {
        nlohmann::json e{{"a", s.a_dbl}, {"A", s.A}, {"B", s.B}};
        if (model == CeilingModel::Power &&
            (s.gamma_right != gamma || s.gamma_left != gamma)) {
            e["gamma_right"] = s.gamma_right;
            e["gamma_left"] = s.gamma_left;
        }
        arr.push_back(e);
    }
    j["singularities"] = arr;
    if (!weak.empty()) {
        auto w = nlohmann::json::array();
        for (const auto& ws : weak)
            w.push_back({{"a", ws.a_dbl}, {"strength", ws.strength}, {"gamma", ws.gamma}});
        j["weak"] = w;
    }
    return j.dump();
}

CeilingSpec CeilingSpec::from_json(const std::string& text, unsigned bits) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigInvalid(std::string("ceiling JSON parse error: ") + e.what());
    }
    CeilingSpec s;
    try {
        std::string model = j.at("model").get<std::string>();
        if (model == "log")
            s.model = CeilingModel::Log;
        else if (model == "power")
            s.model = CeilingModel::Power;
        else
            throw ConfigInvalid("ceiling model must be 'log' or 'power'");
        s.offset = j.value("offset", 0.0);
        s.gamma = j.value("gamma", -0.5);
        for (const auto& e : j.at("singularities")) {
            Singularity sg;
            sg.a_dbl = frac_pos(e.at("a").get<double>());
            sg.a = Fixed::from_double(sg.a_dbl, bits);
            sg.A = e.value("A", 0.0);
            sg.B = e.value("B", 0.0);
            sg.gamma_right = e.value("gamma_right", s.gamma);
            sg.gamma_left = e.value("gamma_left", s.gamma);
            s.sing.push_back(sg);
        }
        for (const auto& e : j.value("weak", nlohmann::json::array())) {
            WeakSingularity w;
            w.a_dbl = frac_pos(e.at("a").get<double>());
            w.a = Fixed::from_double(w.a_dbl, bits);
            w.strength = e.value("strength", 1.0);
            w.gamma = e.value("gamma", -0.25);
            s.weak.push_back(w);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigInvalid(std::string("ceiling JSON invalid: ") + e.what());
    }
    s.validate();
    return s;
}

}  // namespace rotlab
