#include "flatctl/arm.hpp"

#include <cmath>
#include <string>

#include "flatctl/errors.hpp"

namespace flatctl {

namespace {

constexpr double kDetGuard = 1e-9; // smallest usable |det H|, m^2

void requirePositive(double value, const char* name) {
    if (!(value > 0.0)) {
        throw ConfigError(std::string(name) + " must be positive");
    }
}

std::string atTime(double t) {
    return " at t = " + std::to_string(t);
}

// Solves H x = b by the explicit 2x2 adjugate.
Vec2 solve2(const Mat2& H, double det, const Vec2& b) {
    return {(H[1][1] * b[0] - H[0][1] * b[1]) / det,
            (-H[1][0] * b[0] + H[0][0] * b[1]) / det};
}

Vec2 mulAdd(const Mat2& M, const Vec2& x, const Vec2& c) {
    return {M[0][0] * x[0] + M[0][1] * x[1] + c[0],
            M[1][0] * x[0] + M[1][1] * x[1] + c[1]};
}

} // namespace

void validateArm(const ArmParams& p) {
    requirePositive(p.l1, "l1");
    requirePositive(p.l2, "l2");
    requirePositive(p.r1, "r1");
    requirePositive(p.r2, "r2");
    requirePositive(p.m1, "m1");
    requirePositive(p.m2, "m2");
    requirePositive(p.J1, "J1");
    requirePositive(p.J2, "J2");
    if (p.g < 0.0) throw ConfigError("g must be nonnegative");
    if (p.r1 > p.l1 || p.r2 > p.l2) {
        throw ConfigError("centers of mass must lie on their links (r1 <= l1, r2 <= l2)");
    }
}

void validateArmGains(const ArmGains& g) {
    requirePositive(g.lam00, "lam00");
    requirePositive(g.lam01, "lam01");
    requirePositive(g.lam10, "lam10");
    requirePositive(g.lam11, "lam11");
}

ArmDynamics massCoriolisGravity(const ArmParams& p, const ArmState& s) {
    double c2 = std::cos(s.theta2);
    double s2 = std::sin(s.theta2);
    double s1 = std::sin(s.theta1);
    double s12 = std::sin(s.theta1 + s.theta2);

    ArmDynamics d;
    d.M[0][0] = p.J1 + p.J2 + p.m1 * p.r1 * p.r1 +
                p.m2 * (p.l1 * p.l1 + p.r2 * p.r2 + 2.0 * p.l1 * p.r2 * c2);
    d.M[0][1] = p.J2 + p.m2 * (p.r2 * p.r2 + p.l1 * p.r2 * c2);
    d.M[1][0] = d.M[0][1];
    d.M[1][1] = p.J2 + p.m2 * p.r2 * p.r2;

    double coupling = p.m2 * p.l1 * p.r2 * s2;
    d.C[0] = -coupling * (s.dtheta2 * s.dtheta2 + 2.0 * s.dtheta1 * s.dtheta2);
    d.C[1] = coupling * s.dtheta1 * s.dtheta1;

    d.G[0] = (p.m2 * p.l1 + p.m1 * p.r1) * p.g * s1 + p.m2 * p.r2 * p.g * s12;
    d.G[1] = p.m2 * p.r2 * p.g * s12;
    return d;
}

double armPotential(const ArmParams& p, double theta1, double theta2) {
    return -(p.m2 * p.l1 + p.m1 * p.r1) * p.g * std::cos(theta1) -
           p.m2 * p.r2 * p.g * std::cos(theta1 + theta2);
}

double armEnergy(const ArmParams& p, const ArmState& s) {
    ArmDynamics d = massCoriolisGravity(p, s);
    double kinetic = 0.5 * (d.M[0][0] * s.dtheta1 * s.dtheta1 +
                            2.0 * d.M[0][1] * s.dtheta1 * s.dtheta2 +
                            d.M[1][1] * s.dtheta2 * s.dtheta2);
    return kinetic + armPotential(p, s.theta1, s.theta2);
}

EndEffector forwardKinematics(const ArmParams& p, double theta1, double theta2) {
    return {p.l1 * std::cos(theta1) + p.l2 * std::cos(theta1 + theta2),
            p.l1 * std::sin(theta1) + p.l2 * std::sin(theta1 + theta2)};
}

JointAngles inverseKinematics(const ArmParams& p, const EndEffector& h, Elbow elbow) {
    validateArm(p);
    double rsq = h.hx * h.hx + h.hy * h.hy;
    if (rsq < 1e-24 && std::fabs(p.l1 - p.l2) < 1e-12) {
        throw AmbiguityError("center target with equal link lengths: any shoulder angle works");
    }
    double hbar = (rsq - p.l1 * p.l1 - p.l2 * p.l2) / (2.0 * p.l1 * p.l2);
    if (std::fabs(hbar) > 1.0 + 1e-12) {
        throw ReachabilityError("target radius " + std::to_string(std::sqrt(rsq)) +
                                " outside the reachable annulus [" +
                                std::to_string(std::fabs(p.l1 - p.l2)) + ", " +
                                std::to_string(p.l1 + p.l2) + "]");
    }
    hbar = std::clamp(hbar, -1.0, 1.0);
    double sin2 = std::sqrt(1.0 - hbar * hbar);
    if (elbow == Elbow::Up) sin2 = -sin2;
    JointAngles a;
    a.theta2 = std::atan2(sin2, hbar);
    a.theta1 = std::atan2(h.hy, h.hx) - std::atan2(p.l2 * sin2, p.l1 + p.l2 * hbar);
    return a;
}

EffectorMatrices endEffectorDynamicsMatrices(const ArmParams& p, const ArmState& s) {
    double c1 = std::cos(s.theta1);
    double s1 = std::sin(s.theta1);
    double c12 = std::cos(s.theta1 + s.theta2);
    double s12 = std::sin(s.theta1 + s.theta2);
    double hx = p.l1 * c1 + p.l2 * c12;
    double hy = p.l1 * s1 + p.l2 * s12;
    double wSq1 = s.dtheta1 * s.dtheta1;
    double wSq12 = (s.dtheta1 + s.dtheta2) * (s.dtheta1 + s.dtheta2);

    EffectorMatrices em;
    em.H = {{{-hy, -p.l2 * s12}, {hx, p.l2 * c12}}};
    em.phi = {p.l1 * c1 * wSq1 + p.l2 * c12 * wSq12,
              p.l1 * s1 * wSq1 + p.l2 * s12 * wSq12};
    em.detH = em.H[0][0] * em.H[1][1] - em.H[0][1] * em.H[1][0];
    return em;
}

JointRef jointReference(const ArmParams& p, const ArmRef& ref, double t) {
    validateArm(p);
    Jet hx = evalRefJet(ref.hx, t, 2);
    Jet hy = evalRefJet(ref.hy, t, 2);
    Jet hbar = (hx * hx + hy * hy - (p.l1 * p.l1 + p.l2 * p.l2)) * (1.0 / (2.0 * p.l1 * p.l2));
    if (std::fabs(hbar.value()) > 1.0 + 1e-12) {
        throw ReachabilityError("reference leaves the reachable annulus" + atTime(t));
    }
    Jet oneMinus = 1.0 - hbar * hbar;
    // det H along the reference is l1 l2 sin(theta2); keep it off zero.
    double sinFloor = kDetGuard / (p.l1 * p.l2);
    if (oneMinus.value() <= sinFloor * sinFloor) {
        throw SingularityError("reference reaches an extended or folded configuration" +
                               atTime(t));
    }
    Jet sin2 = jetSqrt(oneMinus);
    if (ref.elbow == Elbow::Up) sin2 = -sin2;
    JointRef jr;
    jr.theta2 = jetAtan2(sin2, hbar);
    jr.theta1 = jetAtan2(hy, hx) - jetAtan2(p.l2 * sin2, p.l1 + p.l2 * hbar);
    return jr;
}

Torque armOpenLoop(const ArmParams& p, const ArmRef& ref, double t) {
    JointRef jr = jointReference(p, ref, t);
    ArmState sr{jr.theta1.value(), jr.theta2.value(), jr.theta1.derivative(1),
                jr.theta2.derivative(1)};
    ArmDynamics dyn = massCoriolisGravity(p, sr);
    EffectorMatrices em = endEffectorDynamicsMatrices(p, sr);
    if (std::fabs(em.detH) < kDetGuard) {
        throw SingularityError("reference configuration is singular" + atTime(t));
    }
    Vec2 rhs{evalRef(ref.hx, t, 2) + em.phi[0], evalRef(ref.hy, t, 2) + em.phi[1]};
    Vec2 acc = solve2(em.H, em.detH, rhs);
    Vec2 torque = mulAdd(dyn.M, acc, {dyn.C[0] + dyn.G[0], dyn.C[1] + dyn.G[1]});
    return {torque[0], torque[1]};
}

Torque armTrackingLaw(const ArmParams& p, const ArmGains& g, const ArmRef& ref,
                      double t, const ArmState& s) {
    validateArm(p);
    validateArmGains(g);
    ArmDynamics dyn = massCoriolisGravity(p, s);
    EffectorMatrices em = endEffectorDynamicsMatrices(p, s);
    if (std::fabs(em.detH) < kDetGuard) {
        throw SingularityError("arm reached an extended or folded configuration" + atTime(t));
    }
    // Current end-effector position and velocity follow from the H matrix:
    // its first column is (-hy, hx) and hdot = H thetadot.
    double hx = em.H[1][0];
    double hy = -em.H[0][0];
    double ex = hx - evalRef(ref.hx, t, 0);
    double ey = hy - evalRef(ref.hy, t, 0);
    double dex = em.H[0][0] * s.dtheta1 + em.H[0][1] * s.dtheta2 - evalRef(ref.hx, t, 1);
    double dey = em.H[1][0] * s.dtheta1 + em.H[1][1] * s.dtheta2 - evalRef(ref.hy, t, 1);

    Vec2 desired{evalRef(ref.hx, t, 2) - g.lam10 * dex - g.lam00 * ex,
                 evalRef(ref.hy, t, 2) - g.lam11 * dey - g.lam01 * ey};
    Vec2 rhs{desired[0] + em.phi[0], desired[1] + em.phi[1]};
    Vec2 acc = solve2(em.H, em.detH, rhs);
    Vec2 torque = mulAdd(dyn.M, acc, {dyn.C[0] + dyn.G[0], dyn.C[1] + dyn.G[1]});
    return {torque[0], torque[1]};
}

SimResult armSimulate(const ArmParams& p, const ArmLaw& law, const ArmState& x0,
                      const IntegratorConfig& cfg) {
    validateArm(p);
    VectorField f = [&p, &law](double t, const std::vector<double>& x) {
        ArmState st{x[0], x[1], x[2], x[3]};
        Torque torque = law(t, st);
        ArmDynamics dyn = massCoriolisGravity(p, st);
        double det = dyn.M[0][0] * dyn.M[1][1] - dyn.M[0][1] * dyn.M[1][0];
        if (std::fabs(det) < 1e-15) {
            throw NumericalError("mass matrix is numerically singular");
        }
        Vec2 net{torque.T1 - dyn.C[0] - dyn.G[0], torque.T2 - dyn.C[1] - dyn.G[1]};
        Vec2 acc = solve2(dyn.M, det, net);
        return std::vector<double>{x[2], x[3], acc[0], acc[1]};
    };
    SimResult r = integrate(f, {x0.theta1, x0.theta2, x0.dtheta1, x0.dtheta2}, cfg);

    r.inputs.reserve(r.times.size());
    auto& effector = r.auxiliaries["end_effector"];
    effector.reserve(r.times.size());
    for (std::size_t i = 0; i < r.times.size(); ++i) {
        ArmState st{r.states[i][0], r.states[i][1], r.states[i][2], r.states[i][3]};
        Torque torque = law(r.times[i], st);
        r.inputs.push_back({torque.T1, torque.T2});
        EndEffector h = forwardKinematics(p, st.theta1, st.theta2);
        effector.push_back({h.hx, h.hy});
    }
    return r;
}

ArmRef armScenarioReference(const ArmParams& p, double tEnd) {
    validateArm(p);
    if (!(tEnd > 0.0)) throw ConfigError("reference duration must be positive");
    double hxi = 0.8 * (p.l1 + p.l2);
    double hxf = 0.0;
    double hyi = p.l1 + 0.1 * p.l2;
    double hyf = -0.1 * p.l1;
    ArmRef ref;
    ref.hx = lineRef(hxi, (hxf - hxi) / tEnd);
    ref.hy = tanhOfLineRef(hyi, hyf, 9.0, 0.5 * hxi, hxi, hxf, tEnd);
    ref.elbow = Elbow::Down;
    return ref;
}

} // namespace flatctl
