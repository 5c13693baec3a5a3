#include "aerocap/aero.hpp"

#include <algorithm>
#include <stdexcept>

namespace aerocap {

AeroModel AeroModel::linear_nominal() {
    AeroModel m;
    m.kind = Kind::Linear;
    m.CD0 = 1.72;
    m.CDa = 1.87e-2;
    m.CL0 = 7.07e-2;
    m.CLa = -1.62e-2;
    return m;
}

AeroModel AeroModel::quadratic_nominal() {
    AeroModel m;
    m.kind = Kind::Quadratic;
    m.CD0 = 1.59;
    m.CDa = 3.83e-3;
    m.CDa2 = -4.25e-4;
    m.CL0 = -2.71e-2;
    m.CLa = -2.82e-2;
    m.CLa2 = -3.43e-4;
    return m;
}

VehicleModel VehicleModel::uop_defaults() {
    VehicleModel v;
    v.mass = 4063.0;
    v.S = 15.9;
    v.alpha_min_deg = -25.0;
    v.alpha_max_deg = -10.0;
    v.sigma_min_deg = 15.0;
    v.sigma_max_deg = 165.0;
    v.alpha_rate_deg_s = 5.0;
    v.sigma_rate_deg_s = 15.0;
    return v;
}

namespace {

AeroCoefficients table_lookup(const AeroModel& m, double alpha) {
    const auto& t = m.table;
    if (t.empty() || alpha < t.front().alpha_deg || alpha > t.back().alpha_deg) {
        throw std::out_of_range("aero table lookup outside tabulated alpha range");
    }
    auto hi = std::lower_bound(t.begin(), t.end(), alpha,
                               [](const AeroModel::TableRow& row, double a) {
                                   return row.alpha_deg < a;
                               });
    if (hi == t.begin()) {
        return {hi->CL, hi->CD};
    }
    auto lo = hi - 1;
    if (hi == t.end()) {
        return {lo->CL, lo->CD};
    }
    const double w = (alpha - lo->alpha_deg) / (hi->alpha_deg - lo->alpha_deg);
    return {lo->CL + w * (hi->CL - lo->CL), lo->CD + w * (hi->CD - lo->CD)};
}

}  // namespace

AeroCoefficients coefficients(const AeroModel& model, double alpha_deg) {
    AeroCoefficients c;
    switch (model.kind) {
        case AeroModel::Kind::Linear:
            c.CL = model.CLa * alpha_deg + model.CL0;
            c.CD = model.CDa * alpha_deg + model.CD0;
            break;
        case AeroModel::Kind::Quadratic:
            c.CL = model.CLa2 * alpha_deg * alpha_deg + model.CLa * alpha_deg + model.CL0;
            c.CD = model.CDa2 * alpha_deg * alpha_deg + model.CDa * alpha_deg + model.CD0;
            break;
        case AeroModel::Kind::Table:
            c = table_lookup(model, alpha_deg);
            break;
    }
    c.CL *= model.k_CL;
    c.CD *= model.k_CD;
    return c;
}

LiftDrag lift_drag(const AeroModel& model, const VehicleModel& vehicle,
                   double rho, double V, double alpha_deg) {
    if (rho <= 0.0) {
        return {0.0, 0.0};
    }
    const AeroCoefficients c = coefficients(model, alpha_deg);
    const double q_over_m = 0.5 * rho * V * V * vehicle.S / vehicle.mass;
    return {q_over_m * c.CL, q_over_m * c.CD};
}

}  // namespace aerocap
