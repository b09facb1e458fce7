#pragma once

// Planar two-link arm: joint-space dynamics, end-effector kinematics, and
// flatness-based control. The end-effector position is a flat output, so
// open-loop torques follow from a reference path and its first two
// derivatives, and a feedback law can impose linear second-order error
// dynamics per axis.

#include <array>
#include <functional>

#include "flatctl/integrate.hpp"
#include "flatctl/jet.hpp"
#include "flatctl/trajectory.hpp"

namespace flatctl {

struct ArmParams {
    double l1 = 0.3384; // lower link length, m
    double l2 = 0.4554; // upper link length, m
    double r1 = 0.1692; // lower link center of mass, m
    double r2 = 0.2277; // upper link center of mass, m
    double m1 = 2.10;   // lower link mass, kg
    double m2 = 1.65;   // upper link mass, kg
    double J1 = 0.025;  // lower link inertia, kg m^2
    double J2 = 0.075;  // upper link inertia, kg m^2
    double g = 9.81;    // gravity, m/s^2
};

void validateArm(const ArmParams& p);

struct ArmState {
    double theta1 = 0.0;
    double theta2 = 0.0;
    double dtheta1 = 0.0;
    double dtheta2 = 0.0;
};

struct EndEffector {
    double hx = 0.0;
    double hy = 0.0;
};

enum class Elbow { Up, Down };

using Mat2 = std::array<std::array<double, 2>, 2>;
using Vec2 = std::array<double, 2>;

struct ArmDynamics {
    Mat2 M{};  // joint-space mass matrix, symmetric
    Vec2 C{};  // Coriolis and centripetal torques
    Vec2 G{};  // gravity torques
};

ArmDynamics massCoriolisGravity(const ArmParams& p, const ArmState& s);

// Potential energy consistent with the gravity torques (G = dV/dtheta) and
// total mechanical energy of a state. Conserved under zero applied torque.
double armPotential(const ArmParams& p, double theta1, double theta2);
double armEnergy(const ArmParams& p, const ArmState& s);

EndEffector forwardKinematics(const ArmParams& p, double theta1, double theta2);

struct JointAngles {
    double theta1 = 0.0;
    double theta2 = 0.0;
};

// Closed-form inverse kinematics. The elbow branch picks the sign of
// sin(theta2); Down is the positive root. Unreachable targets raise
// ReachabilityError; the center point with equal link lengths raises
// AmbiguityError (every theta1 works there).
JointAngles inverseKinematics(const ArmParams& p, const EndEffector& h,
                              Elbow elbow = Elbow::Down);

struct EffectorMatrices {
    Mat2 H{};    // maps joint accelerations to end-effector accelerations
    Vec2 phi{};  // centripetal remainder: hdd = H * thetadd - phi
    double detH = 0.0;
};

EffectorMatrices endEffectorDynamicsMatrices(const ArmParams& p, const ArmState& s);

// Reference path for the end effector with an elbow branch choice.
struct ArmRef {
    RefTrajectory hx;
    RefTrajectory hy;
    Elbow elbow = Elbow::Down;
};

// Joint-space reference as order-2 jets (value, rate, acceleration),
// obtained by analytic differentiation through the inverse kinematics.
struct JointRef {
    Jet theta1;
    Jet theta2;
};

JointRef jointReference(const ArmParams& p, const ArmRef& ref, double t);

struct Torque {
    double T1 = 0.0;
    double T2 = 0.0;
};

// Feedforward torque reproducing the reference exactly from matched initial
// conditions. Raises SingularityError (with the time) when the reference
// passes through an extended or folded configuration.
Torque armOpenLoop(const ArmParams& p, const ArmRef& ref, double t);

// Diagonal gains of the per-axis error dynamics e'' = -lam1 e' - lam0 e.
// Defaults factor as (s+5)(s+10) on the first axis and (s+6)(s+12) on the
// second.
struct ArmGains {
    double lam00 = 50.0; // axis-1 position gain
    double lam01 = 72.0; // axis-2 position gain
    double lam10 = 15.0; // axis-1 velocity gain
    double lam11 = 18.0; // axis-2 velocity gain
};

void validateArmGains(const ArmGains& g);

Torque armTrackingLaw(const ArmParams& p, const ArmGains& g, const ArmRef& ref,
                      double t, const ArmState& s);

using ArmLaw = std::function<Torque(double, const ArmState&)>;

// Integrates the joint dynamics under a torque law. State order is
// (theta1, theta2, dtheta1, dtheta2); inputs carry the torques and the
// auxiliary channel "end_effector" carries forward kinematics per sample.
SimResult armSimulate(const ArmParams& p, const ArmLaw& law, const ArmState& x0,
                      const IntegratorConfig& cfg);

// The desk scenario reference: a straight-line sweep in hx with a smoothed
// tanh step in hy, parametrized by the arm geometry.
ArmRef armScenarioReference(const ArmParams& p, double tEnd);

} // namespace flatctl
