#pragma once
/**
 * @file planner.hpp
 * @brief Batch RRT toward a point goal or toward a model-based target tree.
 *
 * Growth runs in batches of `batch_size` steps; the connection test only
 * happens at batch boundaries, so steps_used is always a multiple of the
 * batch size and at least one full batch runs.
 */

#include <parkrrt/path.hpp>
#include <parkrrt/scenario.hpp>
#include <parkrrt/target_tree.hpp>

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <utility>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace parkrrt
{
    enum class TargetMode
    {
        point,
        model_tree
    };

    std::string_view to_string (TargetMode mode);

    struct PlanConfig
    {
        std::uint64_t seed = 0;
        std::size_t batch_size = 1000;
        std::size_t max_batches = 50;
        double tolerance_pos = 0.2;
        double tolerance_heading = 0.1;
        double angle_weight = 1.0;
        TargetMode target_mode = TargetMode::model_tree;
        /// Probability that a growth step pursues a target node instead of a free-space sample.
        double target_tree_bias = 0.5;
        /// Smooth the search-tree part of the result.
        bool smooth = true;

        /// Name of the first violated invariant, or empty.
        std::string violation () const;
    };

    struct TreeNode
    {
        Pose2d pose;
        std::optional<std::size_t> parent;
        Primitive primitive_from_parent;
    };

    /**
     * Append-only search tree; parents always precede children.
     *
     * Positions are bucketed in a uniform grid, and each cell by heading,
     * so nearest() can skip buckets whose lower bound on the configuration
     * distance already exceeds the best candidate.
     */
    class SearchTree
    {
      public:
        static constexpr double kCellSize = 0.5;
        static constexpr int kHeadingBins = 8;

        explicit SearchTree (const Pose2d &root) { insert ({root, std::nullopt, {}}); }

        std::size_t add (std::size_t parent, const Primitive &prim, const Pose2d &pose)
        {
            insert ({pose, parent, prim});
            return nodes_.size () - 1;
        }

        const TreeNode &operator[] (std::size_t i) const { return nodes_[i]; }
        std::size_t size () const { return nodes_.size (); }
        const std::vector<TreeNode> &nodes () const { return nodes_; }

        /// Same contract as nearest_linear(), answered through the grid.
        std::size_t nearest (const Pose2d &p, double angle_weight) const;

      private:
        using Cell = std::pair<long, long>;
        struct CellHash
        {
            std::size_t operator() (const Cell &c) const noexcept { return std::hash<long> () (c.first * 73856093L ^ c.second * 19349663L); }
        };

        static Cell cell_of (const Vector2d &p)
        {
            return {static_cast<long> (std::floor (p.x () / kCellSize)), static_cast<long> (std::floor (p.y () / kCellSize))};
        }

        static int heading_bin (double heading);

        void insert (TreeNode node);

        // each planar cell buckets its nodes by heading so whole buckets can be skipped
        using Buckets = std::array<std::vector<std::size_t>, kHeadingBins>;

        std::size_t nearest_in_grid (const Pose2d &p, double angle_weight) const;

        std::vector<TreeNode> nodes_;
        std::unordered_map<Cell, Buckets, CellHash> grid_;
        Cell lo_{0, 0}, hi_{0, 0};

        // Answers for repeatedly queried poses (biased targets); only nodes
        // added since the last answer need to be compared.
        struct Remembered
        {
            Pose2d query;
            double angle_weight;
            std::size_t best;
            double best_distance;
            std::size_t seen;
        };
        mutable std::vector<Remembered> memo_;
        mutable std::unordered_map<std::size_t, std::size_t> memo_index_;
    };

    using Rng = std::mt19937_64;

    /// Round-robin cursor and random source for the sampling schedule.
    struct Sampler
    {
        Rng rng;
        std::size_t counter = 0;
    };

    /// Consecutive rejected free-space draws before giving up.
    inline constexpr int kMaxSampleRejections = 1000;

    /**
     * With probability `bias` the next target pose in round-robin order,
     * otherwise a free-space sample (x, y uniform over the workspace and
     * outside every obstacle, heading uniform in [-pi, pi)).
     * @throws WorkspaceFull after 1000 consecutive rejected draws.
     */
    Pose2d random_choice (Sampler &sampler, std::span<const Pose2d> targets, const Scenario &scenario, double bias);

    /// Index of the node closest under config_distance; ties go to the lowest index.
    std::size_t nearest (const SearchTree &tree, const Pose2d &p, double angle_weight);

    /// Exhaustive reference for nearest().
    std::size_t nearest_linear (const SearchTree &tree, const Pose2d &p, double angle_weight);

    /// One growth step. Returns the new node, or nullopt when pursuit was blocked.
    std::optional<std::size_t> grow_once (SearchTree &tree, const Scenario &scenario, Sampler &sampler, std::span<const Pose2d> targets,
                                          const PlanConfig &config);

    /// Primitives from the root to `node` in execution order.
    Path backtrack (const SearchTree &tree, std::size_t node);

    struct PlanResult
    {
        /// Smoothed search-tree part followed by the target-tree entry (model mode).
        Trajectory path;
        /// Search-tree part before smoothing.
        Path raw_approach;
        /// Target-tree entry path (empty in point mode).
        Path entry;
        std::size_t steps_used = 0;
        std::size_t batches = 0;
        double wall_time = 0;
        /// Index into the target list (tree nodes, then roots) reached by the search.
        std::optional<std::size_t> connected_target_node;
        std::size_t rrt_tree_size = 0;
        std::size_t connected_rrt_node = 0;
        /// Mismatch between the last search-tree pose and the entry start.
        JunctionGap junction;
        SearchTree tree{Pose2d{}};
    };

    /// Target poses fed to random_choice in model mode: every tree node, then the roots.
    std::vector<Pose2d> target_poses (const TargetTree &tree);

    /**
     * Plan a parking path.
     * @throws ContractViolation when the start is in collision or the config is invalid.
     * @throws NoPathFound after max_batches without connection.
     */
    PlanResult plan (const Scenario &scenario, const PlanConfig &config);

    /// Same as plan() with a prebuilt target tree (model mode).
    PlanResult plan (const Scenario &scenario, const PlanConfig &config, const TargetTree &tree);

} // namespace parkrrt
