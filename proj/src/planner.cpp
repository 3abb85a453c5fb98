#include <parkrrt/planner.hpp>

#include <parkrrt/pursuit.hpp>
#include <parkrrt/smoother.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

namespace parkrrt
{
    std::string_view to_string (TargetMode mode) { return mode == TargetMode::point ? "point" : "tree"; }

    std::string PlanConfig::violation () const
    {
        if (batch_size == 0)
            return "batch_size must be positive";
        if (max_batches == 0)
            return "max_batches must be positive";
        if (!(tolerance_pos > 0) || !(tolerance_heading > 0))
            return "tolerances must be positive";
        if (!(angle_weight >= 0))
            return "angle_weight must be non-negative";
        if (!(target_tree_bias >= 0 && target_tree_bias <= 1))
            return "target_tree_bias must lie in [0, 1]";
        return {};
    }

    Pose2d random_choice (Sampler &sampler, std::span<const Pose2d> targets, const Scenario &scenario, double bias)
    {
        std::uniform_real_distribution<double> unit (0.0, 1.0);
        const double r = unit (sampler.rng);
        if (r < bias && !targets.empty ())
            return targets[sampler.counter++ % targets.size ()];

        const Workspace2d &ws = scenario.workspace;
        std::uniform_real_distribution<double> xs (ws.min.x (), ws.max.x ());
        std::uniform_real_distribution<double> ys (ws.min.y (), ws.max.y ());
        std::uniform_real_distribution<double> headings (-std::numbers::pi, std::numbers::pi);
        for (int attempt = 0; attempt < kMaxSampleRejections; ++attempt)
        {
            const Vector2d p (xs (sampler.rng), ys (sampler.rng));
            if (point_free (p, scenario))
                return {p, headings (sampler.rng)};
        }
        throw WorkspaceFull ("no free-space sample after " + std::to_string (kMaxSampleRejections) + " draws");
    }

    int SearchTree::heading_bin (double heading)
    {
        const double width = 2 * std::numbers::pi / kHeadingBins;
        const int k = static_cast<int> (std::floor ((normalize_angle (heading) + std::numbers::pi) / width));
        return std::clamp (k, 0, kHeadingBins - 1);
    }

    void SearchTree::insert (TreeNode node)
    {
        const Cell c = cell_of (node.pose.position);
        if (nodes_.empty ())
            lo_ = hi_ = c;
        lo_ = {std::min (lo_.first, c.first), std::min (lo_.second, c.second)};
        hi_ = {std::max (hi_.first, c.first), std::max (hi_.second, c.second)};
        grid_[c][static_cast<std::size_t> (heading_bin (node.pose.heading))].push_back (nodes_.size ());
        nodes_.push_back (std::move (node));
    }

    std::size_t SearchTree::nearest (const Pose2d &p, double angle_weight) const
    {
        constexpr std::size_t kMaxCatchUp = 512;
        const std::size_t key = std::hash<double> () (p.x ()) ^ (std::hash<double> () (p.y ()) * 31) ^ (std::hash<double> () (p.heading) * 131) ^
                                (std::hash<double> () (angle_weight) * 1031);
        const auto it = memo_index_.find (key);
        Remembered *slot = nullptr;
        if (it != memo_index_.end ())
        {
            Remembered &m = memo_[it->second];
            if (m.query == p && m.angle_weight == angle_weight)
                slot = &m;
        }
        if (slot && nodes_.size () - slot->seen <= kMaxCatchUp)
        {
            // later nodes carry larger indices, so only a strictly smaller distance wins
            for (std::size_t i = slot->seen; i < nodes_.size (); ++i)
            {
                const double d = config_distance (nodes_[i].pose, p, angle_weight);
                if (d < slot->best_distance)
                {
                    slot->best_distance = d;
                    slot->best = i;
                }
            }
            slot->seen = nodes_.size ();
            return slot->best;
        }

        const std::size_t best = nearest_in_grid (p, angle_weight);
        const Remembered fresh{p, angle_weight, best, config_distance (nodes_[best].pose, p, angle_weight), nodes_.size ()};
        if (slot)
            *slot = fresh;
        else if (it == memo_index_.end ())
        {
            memo_index_.emplace (key, memo_.size ());
            memo_.push_back (fresh);
        }
        return best;
    }

    std::size_t SearchTree::nearest_in_grid (const Pose2d &p, double angle_weight) const
    {
        const Cell q = cell_of (p.position);
        const double bin_width = 2 * std::numbers::pi / kHeadingBins;

        // lower bound on the weighted heading term for each bucket
        std::array<double, kHeadingBins> heading_floor{};
        const int own = heading_bin (p.heading);
        for (int k = 0; k < kHeadingBins; ++k)
        {
            if (k == own)
                continue;
            const double a = -std::numbers::pi + k * bin_width;
            const double gap = std::min (std::abs (angle_difference (p.heading, a)), std::abs (angle_difference (p.heading, a + bin_width)));
            heading_floor[static_cast<std::size_t> (k)] = angle_weight * gap * gap;
        }

        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity ();
        // bounds are shaved slightly so rounding never prunes a node that could tie
        auto beaten = [&] (double bound) { return bound * (1 - 1e-9) - 1e-12 > best_d; };
        auto visit = [&] (long cx, long cy) {
            const auto it = grid_.find ({cx, cy});
            if (it == grid_.end ())
                return;
            const double x0 = static_cast<double> (cx) * kCellSize, y0 = static_cast<double> (cy) * kCellSize;
            const double dx = std::max ({x0 - p.x (), 0.0, p.x () - x0 - kCellSize});
            const double dy = std::max ({y0 - p.y (), 0.0, p.y () - y0 - kCellSize});
            const double planar = dx * dx + dy * dy;
            if (beaten (planar))
                return;
            for (std::size_t k = 0; k < it->second.size (); ++k)
            {
                if (it->second[k].empty () || beaten (planar + heading_floor[k]))
                    continue;
                for (const std::size_t i : it->second[k])
                {
                    const double d = config_distance (nodes_[i].pose, p, angle_weight);
                    if (d < best_d || (d == best_d && i < best))
                    {
                        best_d = d;
                        best = i;
                    }
                }
            }
        };
        const long reach = std::max ({q.first - lo_.first, hi_.first - q.first, q.second - lo_.second, hi_.second - q.second});
        for (long r = 0; r <= reach; ++r)
        {
            // every point in ring r lies at least (r - 1) cells away in the plane
            const double gap = static_cast<double> (r - 1) * kCellSize;
            if (r > 1 && beaten (gap * gap))
                break;
            for (long dx = -r; dx <= r; ++dx)
            {
                if (std::abs (dx) == r)
                    for (long dy = -r; dy <= r; ++dy)
                        visit (q.first + dx, q.second + dy);
                else
                {
                    visit (q.first + dx, q.second - r);
                    visit (q.first + dx, q.second + r);
                }
            }
        }
        return best;
    }

    std::size_t nearest (const SearchTree &tree, const Pose2d &p, double angle_weight)
    {
        if (tree.size () == 0)
            throw ContractViolation ("nearest on an empty tree");
        return tree.nearest (p, angle_weight);
    }

    std::size_t nearest_linear (const SearchTree &tree, const Pose2d &p, double angle_weight)
    {
        if (tree.size () == 0)
            throw ContractViolation ("nearest on an empty tree");
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity ();
        const auto &nodes = tree.nodes ();
        for (std::size_t i = 0; i < nodes.size (); ++i)
        {
            const double d = config_distance (nodes[i].pose, p, angle_weight);
            if (d < best_d)
            {
                best_d = d;
                best = i;
            }
        }
        return best;
    }

    std::optional<std::size_t> grow_once (SearchTree &tree, const Scenario &scenario, Sampler &sampler, std::span<const Pose2d> targets,
                                          const PlanConfig &config)
    {
        const Pose2d sample = random_choice (sampler, targets, scenario, config.target_tree_bias);
        const std::size_t from = nearest (tree, sample, config.angle_weight);
        const auto step = point_pursuit (tree[from].pose, sample, scenario, config.angle_weight);
        if (!step)
            return std::nullopt;
        return tree.add (from, step->primitive, step->destination);
    }

    Path backtrack (const SearchTree &tree, std::size_t node)
    {
        if (node >= tree.size ())
            throw ContractViolation ("search tree node index out of range");
        std::vector<Primitive> prims;
        for (std::size_t at = node; tree[at].parent; at = *tree[at].parent)
            prims.push_back (tree[at].primitive_from_parent);
        return {tree[0].pose, {prims.rbegin (), prims.rend ()}};
    }

    std::vector<Pose2d> target_poses (const TargetTree &tree)
    {
        std::vector<Pose2d> out;
        out.reserve (tree.nodes.size () + tree.roots.size ());
        for (const auto &n : tree.nodes)
            out.push_back (n.pose);
        out.insert (out.end (), tree.roots.begin (), tree.roots.end ());
        return out;
    }

    namespace
    {
        struct Connection
        {
            std::size_t rrt_node;
            std::size_t target;
            double distance;
        };

        // Best pair among search nodes [from, size) within both tolerances of some target.
        std::optional<Connection> find_connection (const SearchTree &tree, std::size_t from, std::span<const Pose2d> targets, const PlanConfig &config)
        {
            std::optional<Connection> best;
            for (std::size_t i = from; i < tree.size (); ++i)
            {
                const Pose2d &p = tree[i].pose;
                for (std::size_t j = 0; j < targets.size (); ++j)
                {
                    if (!within_tolerance (p, targets[j], config))
                        continue;
                    const double d = config_distance (p, targets[j], config.angle_weight);
                    if (!best || d < best->distance)
                        best = Connection{i, j, d};
                }
            }
            return best;
        }

        double best_distance (const SearchTree &tree, std::span<const Pose2d> targets, double weight)
        {
            double best = std::numeric_limits<double>::infinity ();
            for (const auto &n : tree.nodes ())
                for (const auto &t : targets)
                    best = std::min (best, config_distance (n.pose, t, weight));
            return best;
        }

        PlanResult run (const Scenario &scenario, const PlanConfig &config, const TargetTree *tree)
        {
            const auto started = std::chrono::steady_clock::now ();
            if (const auto why = config.violation (); !why.empty ())
                throw ContractViolation ("invalid plan config: " + why);
            if (!pose_collision_free (scenario.start, scenario))
                throw ContractViolation ("start pose in collision");

            // sampling list and connection list; in point mode both are the goal alone
            std::vector<Pose2d> connect_to;
            std::span<const Pose2d> samples;
            if (tree)
            {
                connect_to = target_poses (*tree);
                samples = std::span<const Pose2d> (connect_to.data (), tree->nodes.size ());
            }
            else
            {
                connect_to = {scenario.goal};
                samples = connect_to;
            }

            PlanResult result;
            result.tree = SearchTree (scenario.start);
            Sampler sampler{Rng (config.seed), 0};
            std::size_t checked = 0;
            std::optional<Connection> connection;
            while (result.batches < config.max_batches && !connection)
            {
                for (std::size_t i = 0; i < config.batch_size; ++i)
                    grow_once (result.tree, scenario, sampler, samples, config);
                ++result.batches;
                result.steps_used += config.batch_size;
                connection = find_connection (result.tree, checked, connect_to, config);
                checked = result.tree.size ();
            }
            result.rrt_tree_size = result.tree.size ();

            if (!connection)
                throw NoPathFound ("no connection after " + std::to_string (result.batches) + " batches",
                                   best_distance (result.tree, connect_to, config.angle_weight), result.steps_used);

            result.connected_rrt_node = connection->rrt_node;
            result.raw_approach = backtrack (result.tree, connection->rrt_node);
            const Pose2d anchor = connect_to[connection->target];
            result.path = config.smooth ? smooth (result.raw_approach, scenario, config, anchor) : Trajectory{result.raw_approach};
            if (tree)
            {
                result.connected_target_node = connection->target;
                result.entry = backtrack_target (*tree, connection->target);
                const Pose2d junction = end_pose (result.path, scenario.vehicle);
                result.junction = {(junction.position - result.entry.start.position).norm (),
                                   std::abs (angle_difference (junction.heading, result.entry.start.heading))};
                if (!result.entry.empty ())
                    result.path.push_back (result.entry);
            }
            else
            {
                result.connected_target_node = 0;
                const Pose2d end = end_pose (result.path, scenario.vehicle);
                result.junction = {(end.position - scenario.goal.position).norm (), std::abs (angle_difference (end.heading, scenario.goal.heading))};
                result.entry = {scenario.goal, {}};
            }
            result.wall_time = std::chrono::duration<double> (std::chrono::steady_clock::now () - started).count ();
            return result;
        }
    } // namespace

    PlanResult plan (const Scenario &scenario, const PlanConfig &config)
    {
        if (config.target_mode == TargetMode::point)
            return run (scenario, config, nullptr);
        const auto started = std::chrono::steady_clock::now ();
        const TargetTree tree = build_target_tree (scenario);
        PlanResult result = run (scenario, config, &tree);
        result.wall_time = std::chrono::duration<double> (std::chrono::steady_clock::now () - started).count ();
        return result;
    }

    PlanResult plan (const Scenario &scenario, const PlanConfig &config, const TargetTree &tree)
    {
        if (config.target_mode == TargetMode::point)
            return run (scenario, config, nullptr);
        return run (scenario, config, &tree);
    }

} // namespace parkrrt
