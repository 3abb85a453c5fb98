#include <parkrrt/smoother.hpp>

#include <parkrrt/pursuit.hpp>

#include <cmath>

namespace parkrrt
{
    bool within_tolerance (const Pose2d &a, const Pose2d &b, const PlanConfig &config)
    {
        return (a.position - b.position).norm () <= config.tolerance_pos && std::abs (angle_difference (a.heading, b.heading)) <= config.tolerance_heading;
    }

    namespace
    {
        class Smoother
        {
          public:
            Smoother (const Path &path, const Scenario &scenario, const PlanConfig &config, std::optional<Pose2d> anchor)
                : path_ (path), scenario_ (scenario), config_ (config), anchor_ (anchor), poses_ (poses (path, scenario.vehicle))
            {
            }

            Trajectory run ()
            {
                segment (0, path_.size (), path_.start);
                if (out_.empty ())
                    out_.push_back ({path_.start, {}});
                return std::move (out_);
            }

          private:
            Pose2d current_end () const { return out_.empty () ? path_.start : end_pose (out_.back (), scenario_.vehicle); }

            void segment (std::size_t lo, std::size_t hi, const Pose2d &from)
            {
                const std::size_t n = hi - lo;
                if (n <= 1)
                {
                    Path leg{poses_[lo], {path_.primitives.begin () + static_cast<std::ptrdiff_t> (lo), path_.primitives.begin () + static_cast<std::ptrdiff_t> (hi)}};
                    if (!leg.empty ())
                        append_leg (out_, std::move (leg), scenario_.vehicle);
                    return;
                }

                const Pose2d target = (hi == path_.size () && anchor_) ? *anchor_ : poses_[hi];
                if (auto replanned = direct (from, target, n - 1))
                {
                    if (!replanned->empty ())
                        append_leg (out_, std::move (*replanned), scenario_.vehicle);
                    return;
                }

                const std::size_t mid = lo + n / 2;
                segment (lo, mid, from);
                segment (mid, hi, current_end ());
            }

            // Pursue `target` from `from` with at most `budget` primitives.
            std::optional<Path> direct (const Pose2d &from, const Pose2d &target, std::size_t budget) const
            {
                Path leg{from, {}};
                Pose2d at = from;
                while (true)
                {
                    if (within_tolerance (at, target, config_))
                        return leg;
                    if (leg.size () >= budget)
                        return std::nullopt;
                    const auto step = point_pursuit (at, target, scenario_, config_.angle_weight);
                    if (!step)
                        return std::nullopt;
                    leg.primitives.push_back (step->primitive);
                    at = step->destination;
                }
            }

            const Path &path_;
            const Scenario &scenario_;
            const PlanConfig &config_;
            std::optional<Pose2d> anchor_;
            std::vector<Pose2d> poses_;
            Trajectory out_;
        };
    } // namespace

    Trajectory smooth (const Path &path, const Scenario &scenario, const PlanConfig &config, std::optional<Pose2d> end_anchor)
    {
        if (!replays_collision_free (path, scenario))
            throw ContractViolation ("smooth: input path does not replay collision free");
        if (path.size () <= 1)
            return {path};
        return Smoother (path, scenario, config, end_anchor).run ();
    }

} // namespace parkrrt
