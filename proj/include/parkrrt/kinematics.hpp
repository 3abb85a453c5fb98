#pragma once
/**
 * @file kinematics.hpp
 * @brief Ackermann arc-motion model over fixed-length motion primitives.
 *
 * The pose is the rear-axle midpoint. A primitive drives a circular arc of
 * fixed length with one equivalent steering angle; radius R = L / tan(phi).
 * Sign convention: positive steer turns toward increasing heading when
 * driving forward. Heading change per primitive is dir * s * tan(phi) / L.
 */

#include <parkrrt/errors.hpp>
#include <parkrrt/geometry.hpp>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace parkrrt
{
    /// Length of every motion primitive, meters.
    inline constexpr double kPrimitiveLength = 0.1;

    template <typename Scalar> constexpr Scalar degrees (Scalar deg) { return deg * std::numbers::pi_v<Scalar> / 180; }

    template <typename Scalar> struct VehicleParams
    {
        Scalar wheelbase = Scalar (2.7);
        Scalar body_length = Scalar (4.5);
        Scalar body_width = Scalar (1.8);
        Scalar rear_overhang = Scalar (0.9);
        Scalar max_steer = degrees (Scalar (30));
        /// Lateral distance between wheel contact lines; only used by equivalent_steer.
        Scalar track_width = Scalar (1.6);

        /// Name of the first violated invariant, or empty when valid.
        std::string violation () const
        {
            if (!(wheelbase > 0 && wheelbase < body_length))
                return "wheelbase must satisfy 0 < wheelbase < body_length";
            if (!(max_steer > 0 && max_steer < std::numbers::pi_v<Scalar> / 2))
                return "max_steer must lie in (0, pi/2)";
            if (!(rear_overhang >= 0 && rear_overhang + wheelbase <= body_length))
                return "rear_overhang must satisfy 0 <= rear_overhang and rear_overhang + wheelbase <= body_length";
            if (!(body_width > 0))
                return "body_width must be positive";
            if (!(track_width > 0))
                return "track_width must be positive";
            return {};
        }

        bool valid () const { return violation ().empty (); }
    };

    enum class Direction
    {
        forward = 1,
        backward = -1
    };

    inline constexpr int sign (Direction d) { return static_cast<int> (d); }
    inline constexpr Direction opposite (Direction d) { return d == Direction::forward ? Direction::backward : Direction::forward; }

    template <typename Scalar> struct MotionPrimitive
    {
        Direction direction = Direction::forward;
        Scalar steer = 0;

        static constexpr Scalar arc_length () { return Scalar (kPrimitiveLength); }

        MotionPrimitive reversed () const { return {opposite (direction), steer}; }

        friend bool operator== (const MotionPrimitive &, const MotionPrimitive &) = default;
    };

    /// Drive a signed arc length `s` at constant `curvature` (1/m, positive turns left).
    template <typename Scalar> Pose<Scalar> advance_curvature (const Pose<Scalar> &pose, Scalar s, Scalar curvature)
    {
        const Scalar dtheta = s * curvature;
        // chord = 2 sin(dtheta/2) / curvature, written to stay exact as curvature -> 0
        const Scalar half = dtheta / 2;
        const Scalar chord = half == 0 ? s : s * std::sin (half) / half;
        const Scalar chord_heading = pose.heading + half;
        return {pose.position + chord * unit_vector (chord_heading), pose.heading + dtheta};
    }

    /// Drive `length` meters (signed by direction) on the arc of `steer`; exact for any length.
    template <typename Scalar>
    Pose<Scalar> advance (const Pose<Scalar> &pose, Direction direction, Scalar steer, Scalar length, const VehicleParams<Scalar> &vehicle)
    {
        return advance_curvature (pose, sign (direction) * length, std::tan (steer) / vehicle.wheelbase);
    }

    template <typename Scalar> void check_steer (Scalar steer, const VehicleParams<Scalar> &vehicle)
    {
        if (!(std::abs (steer) <= vehicle.max_steer))
            throw ContractViolation ("steer " + std::to_string (steer) + " exceeds max_steer " + std::to_string (vehicle.max_steer));
    }

    /// Pose after one primitive.
    template <typename Scalar>
    Pose<Scalar> integrate (const Pose<Scalar> &pose, const MotionPrimitive<Scalar> &prim, const VehicleParams<Scalar> &vehicle)
    {
        check_steer (prim.steer, vehicle);
        return advance (pose, prim.direction, prim.steer, MotionPrimitive<Scalar>::arc_length (), vehicle);
    }

    /// Squared position error plus weighted squared heading error (heading difference wrapped).
    template <typename Scalar> Scalar config_distance (const Pose<Scalar> &a, const Pose<Scalar> &b, Scalar angle_weight = Scalar (1))
    {
        const Scalar dtheta = angle_difference (a.heading, b.heading);
        return (a.position - b.position).squaredNorm () + angle_weight * dtheta * dtheta;
    }

    /// `n` poses at arc fractions k/n, k = 1..n; the last one is integrate(pose, prim).
    template <typename Scalar>
    std::vector<Pose<Scalar>> sample_arc (const Pose<Scalar> &pose, const MotionPrimitive<Scalar> &prim, const VehicleParams<Scalar> &vehicle, int n)
    {
        if (n < 1)
            throw ContractViolation ("sample_arc needs n >= 1");
        check_steer (prim.steer, vehicle);
        std::vector<Pose<Scalar>> out;
        out.reserve (static_cast<std::size_t> (n));
        for (int k = 1; k < n; ++k)
            out.push_back (advance (pose, prim.direction, prim.steer, MotionPrimitive<Scalar>::arc_length () * k / n, vehicle));
        out.push_back (integrate (pose, prim, vehicle));
        return out;
    }

    /// Replay primitives from `start`; returns every pose including the start.
    template <typename Scalar>
    std::vector<Pose<Scalar>> replay (const Pose<Scalar> &start, const std::vector<MotionPrimitive<Scalar>> &prims, const VehicleParams<Scalar> &vehicle)
    {
        std::vector<Pose<Scalar>> poses;
        poses.reserve (prims.size () + 1);
        poses.push_back (start);
        for (const auto &m : prims)
            poses.push_back (integrate (poses.back (), m, vehicle));
        return poses;
    }

    /**
     * Single equivalent steering angle of an Ackermann pair: cot(phi) is the
     * mean of the inner and outer wheel cotangents. Both angles must be
     * nonzero, share a sign and stay below pi/2 in magnitude.
     */
    template <typename Scalar> Scalar equivalent_steer (Scalar inner, Scalar outer, const VehicleParams<Scalar> & /*vehicle*/)
    {
        constexpr Scalar half_pi = std::numbers::pi_v<Scalar> / 2;
        const bool same_sign = (inner > 0 && outer > 0) || (inner < 0 && outer < 0);
        if (!same_sign || std::abs (inner) >= half_pi || std::abs (outer) >= half_pi)
            throw ContractViolation ("equivalent_steer needs nonzero same-sign angles below pi/2");
        const Scalar s = inner > 0 ? Scalar (1) : Scalar (-1);
        const Scalar cot_mean = (1 / std::tan (std::abs (inner)) + 1 / std::tan (std::abs (outer))) / 2;
        return s * std::atan (1 / cot_mean);
    }

    using Vehicle = VehicleParams<double>;
    using Primitive = MotionPrimitive<double>;

} // namespace parkrrt
