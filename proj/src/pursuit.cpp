#include <parkrrt/pursuit.hpp>

#include <cmath>

namespace parkrrt
{
    namespace
    {
        double cost (const Pose2d &source, const Pose2d &target, Direction direction, double steer, const Vehicle &vehicle, double weight)
        {
            return config_distance (advance (source, direction, steer, kPrimitiveLength, vehicle), target, weight);
        }

        // Minimum of a unimodal-looking function on [lo, hi].
        template <typename F> double golden_section (F &&f, double lo, double hi)
        {
            constexpr double ratio = 0.6180339887498949;
            double c = hi - ratio * (hi - lo);
            double d = lo + ratio * (hi - lo);
            double fc = f (c), fd = f (d);
            for (int i = 0; i < 40 && hi - lo > 1e-10; ++i)
            {
                if (fc <= fd)
                {
                    hi = d;
                    d = c;
                    fd = fc;
                    c = hi - ratio * (hi - lo);
                    fc = f (c);
                }
                else
                {
                    lo = c;
                    c = d;
                    fc = fd;
                    d = lo + ratio * (hi - lo);
                    fd = f (d);
                }
            }
            return fc <= fd ? c : d;
        }

        std::optional<PursuitResult> pursue_in (const Pose2d &source, const Pose2d &target, Direction direction, double optimum,
                                                const Scenario &scenario, double weight)
        {
            const Vehicle &vehicle = scenario.vehicle;
            auto attempt = [&] (double steer) -> std::optional<PursuitResult> {
                const Primitive prim{direction, steer};
                if (!arc_collision_free (source, prim, scenario, kArcSamples))
                    return std::nullopt;
                const Pose2d dest = integrate (source, prim, vehicle);
                return PursuitResult{prim, dest, config_distance (dest, target, weight)};
            };

            if (auto best = attempt (optimum))
                return best;

            // sweep away from the optimum until a free angle shows up, clamped to the steering range
            auto sweep = [&] (double step) -> std::optional<PursuitResult> {
                for (int k = 1;; ++k)
                {
                    double steer = optimum + k * step;
                    const bool clamped = std::abs (steer) >= vehicle.max_steer;
                    if (clamped)
                        steer = std::copysign (vehicle.max_steer, step);
                    if (steer == optimum)
                        return std::nullopt;
                    if (auto found = attempt (steer))
                        return found;
                    if (clamped)
                        return std::nullopt;
                }
            };
            auto smaller = sweep (-kSteerSweepStep);
            auto larger = sweep (kSteerSweepStep);
            if (smaller && larger)
                return larger->achieved_distance < smaller->achieved_distance ? larger : smaller;
            return smaller ? smaller : larger;
        }
    } // namespace

    double argmin_steer (const Pose2d &source, const Pose2d &target, Direction direction, const Vehicle &vehicle, double angle_weight)
    {
        const double limit = vehicle.max_steer;
        const double s = sign (direction) * kPrimitiveLength;
        auto f = [&] (double steer) { return cost (source, target, direction, steer, vehicle, angle_weight); };
        // tan is odd, so each grid magnitude serves both signs
        auto f_curv = [&] (double curvature) { return config_distance (advance_curvature (source, s, curvature), target, angle_weight); };

        double best = 0.0;
        double best_cost = f (0.0);
        const int cells = static_cast<int> (std::floor (limit / kSteerGridStep + 1e-9));
        // visit |phi| in increasing order so strict improvement keeps the smaller magnitude on ties
        for (int k = 1; k <= cells + 1; ++k)
        {
            const double magnitude = k <= cells ? k * kSteerGridStep : limit;
            if (k == cells + 1 && magnitude <= cells * kSteerGridStep)
                break;
            const double curvature = std::tan (magnitude) / vehicle.wheelbase;
            for (const double sgn : {1.0, -1.0})
            {
                const double c = f_curv (sgn * curvature);
                if (c < best_cost)
                {
                    best_cost = c;
                    best = sgn * magnitude;
                }
            }
        }

        const double lo = std::max (-limit, best - kSteerGridStep);
        const double hi = std::min (limit, best + kSteerGridStep);
        const double refined = golden_section (f, lo, hi);
        if (f (refined) < best_cost)
            return refined;
        return best;
    }

    std::optional<PursuitResult> point_pursuit (const Pose2d &source, const Pose2d &target, const Scenario &scenario, double angle_weight)
    {
        const Vehicle &vehicle = scenario.vehicle;
        const double fwd = argmin_steer (source, target, Direction::forward, vehicle, angle_weight);
        const double bwd = argmin_steer (source, target, Direction::backward, vehicle, angle_weight);
        const double fwd_cost = cost (source, target, Direction::forward, fwd, vehicle, angle_weight);
        const double bwd_cost = cost (source, target, Direction::backward, bwd, vehicle, angle_weight);

        const bool forward_first = fwd_cost <= bwd_cost;
        const Direction first = forward_first ? Direction::forward : Direction::backward;
        if (auto r = pursue_in (source, target, first, forward_first ? fwd : bwd, scenario, angle_weight))
            return r;
        return pursue_in (source, target, opposite (first), forward_first ? bwd : fwd, scenario, angle_weight);
    }

} // namespace parkrrt
