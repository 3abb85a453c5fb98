#include <parkrrt/target_tree.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace parkrrt
{
    namespace
    {
        std::size_t primitives_in (double meters) { return static_cast<std::size_t> (std::llround (meters / kPrimitiveLength)); }

        std::size_t line_primitives (const Scenario &scenario)
        {
            const std::size_t n = primitives_in (scenario.drive_out_length);
            const double per_station = scenario.drive_out_length / (kStationsPerLine * kPrimitiveLength);
            if (n == 0 || std::abs (per_station - std::round (per_station)) > 1e-9)
                throw InvalidScenario ("drive_out_length must be a positive multiple of " + std::to_string (kStationsPerLine * kPrimitiveLength) + " m");
            return n;
        }

        std::string degrees_text (double steer) { return std::to_string (steer * 180.0 / std::numbers::pi) + " deg"; }

        void add_line (TargetTree &tree, const Scenario &scenario, TargetLine line)
        {
            const std::size_t per_station = line.primitives.size () / kStationsPerLine;
            const std::size_t line_index = tree.lines.size ();
            Pose2d pose = tree.roots[line.root];
            std::optional<std::size_t> parent;
            for (std::size_t k = 0; k < kStationsPerLine; ++k)
            {
                TargetNode node;
                node.root = line.root;
                node.parent = parent;
                node.line = line_index;
                node.edge.assign (line.primitives.begin () + static_cast<std::ptrdiff_t> (k * per_station),
                                  line.primitives.begin () + static_cast<std::ptrdiff_t> ((k + 1) * per_station));
                for (const auto &m : node.edge)
                    pose = integrate (pose, m, scenario.vehicle);
                node.pose = pose;
                parent = tree.nodes.size ();
                tree.nodes.push_back (std::move (node));
            }
            tree.lines.push_back (std::move (line));
        }

        // Drive `prims` from `pose`, checking each arc; returns false at the first collision.
        bool drive (Pose2d &pose, const Primitive &prim, std::size_t count, const Scenario &scenario, std::vector<Primitive> *out)
        {
            for (std::size_t i = 0; i < count; ++i)
            {
                if (!arc_collision_free (pose, prim, scenario, kArcSamples))
                    return false;
                pose = integrate (pose, prim, scenario.vehicle);
                if (out)
                    out->push_back (prim);
            }
            return true;
        }

        void require_goal_free (const Scenario &scenario)
        {
            if (!pose_collision_free (scenario.goal, scenario))
                throw InvalidScenario ("goal in collision");
        }

        // Straight lead-in followed by one fixed-angle arc, for every angle of the fan.
        TargetTree build_straight_then_arc (const Scenario &scenario, Direction direction, bool one_sided)
        {
            require_goal_free (scenario);
            const std::size_t total = line_primitives (scenario);
            TargetTree tree;
            tree.roots.push_back (scenario.goal);
            for (const double steer : fan_angles (scenario.vehicle, one_sided))
            {
                const std::size_t straight = primitives_in (min_straight_extension (scenario, scenario.goal, steer, direction));
                TargetLine line;
                line.root = 0;
                line.fixed_steer = steer;
                line.lead_in = straight;
                line.primitives.assign (straight, Primitive{direction, 0.0});
                line.primitives.resize (total, Primitive{direction, steer});
                add_line (tree, scenario, std::move (line));
            }
            return tree;
        }
    } // namespace

    std::vector<double> fan_angles (const Vehicle &vehicle, bool one_sided)
    {
        std::vector<double> out;
        for (int deg = one_sided ? 0 : -30; deg <= 30; deg += 2)
        {
            const double steer = degrees (static_cast<double> (deg));
            if (std::abs (steer) <= vehicle.max_steer + 1e-12)
                out.push_back (std::clamp (steer, -vehicle.max_steer, vehicle.max_steer));
        }
        return out;
    }

    double min_straight_extension (const Scenario &scenario, double steer, Direction direction)
    {
        return min_straight_extension (scenario, scenario.goal, steer, direction);
    }

    double min_straight_extension (const Scenario &scenario, const Pose2d &root, double steer, Direction direction)
    {
        check_steer (steer, scenario.vehicle);
        const std::size_t total = line_primitives (scenario);
        const std::size_t bound = std::min (total, primitives_in (std::floor (scenario.slot.depth / kPrimitiveLength + 1e-9) * kPrimitiveLength));
        const Primitive straight{direction, 0.0};
        const Primitive arc{direction, steer};

        Pose2d lead = root; // pose after `n` straight primitives
        for (std::size_t n = 0; n <= bound; ++n)
        {
            Pose2d pose = lead;
            if (drive (pose, arc, total - n, scenario, nullptr))
                return static_cast<double> (n) * kPrimitiveLength;
            if (n == bound || !drive (lead, straight, 1, scenario, nullptr))
                break; // the straight itself is blocked; longer lead-ins cannot help
        }
        throw ModelInfeasible ("no collision-free straight lead-in for fixed angle " + degrees_text (steer), steer);
    }

    TargetTree build_perpendicular (const Scenario &scenario) { return build_straight_then_arc (scenario, Direction::forward, false); }

    TargetTree build_echelon (const Scenario &scenario) { return build_straight_then_arc (scenario, Direction::backward, true); }

    TargetTree build_parallel (const Scenario &scenario)
    {
        require_goal_free (scenario);
        const Vehicle &vehicle = scenario.vehicle;
        const std::size_t total = line_primitives (scenario);

        TargetTree tree;
        tree.roots.push_back (scenario.goal);
        tree.roots.push_back (mirror_in_slot (scenario.goal, scenario.slot));
        if (!pose_collision_free (tree.roots[1], scenario))
            throw InvalidScenario ("mirrored goal in collision");

        for (std::size_t r = 0; r < tree.roots.size (); ++r)
        {
            const Pose2d root = tree.roots[r];
            const Vector2d left (-std::sin (root.heading), std::cos (root.heading));
            const double escape_steer = left.dot (scenario.slot.outward_normal ()) >= 0 ? vehicle.max_steer : -vehicle.max_steer;

            std::vector<Primitive> lead;
            Pose2d pose = root;

            // reverse straight while the rear keeps its clearance
            const Primitive back{Direction::backward, 0.0};
            while (lead.size () < total)
            {
                const Pose2d next = integrate (pose, back, vehicle);
                const Pose2d with_gap = advance (next, Direction::backward, 0.0, kRearClearance, vehicle);
                if (!arc_collision_free (pose, back, scenario, kArcSamples) || !pose_collision_free (with_gap, scenario))
                    break;
                lead.push_back (back);
                pose = next;
            }

            // full lock out of the slot until the body centre is half a body length past the open edge
            const Primitive escape{Direction::forward, escape_steer};
            auto half_out = [&] (const Pose2d &p) {
                return scenario.slot.distance_past_open_edge (footprint (p, vehicle).center) >= vehicle.body_length / 2;
            };
            while (!half_out (pose))
            {
                if (lead.size () >= total || !drive (pose, escape, 1, scenario, &lead))
                    throw ModelInfeasible ("parallel escape at full lock does not clear the slot", escape_steer);
            }

            for (const double steer : fan_angles (vehicle, false))
            {
                TargetLine line;
                line.root = r;
                line.fixed_steer = steer;
                line.lead_in = lead.size ();
                line.primitives = lead;
                Pose2d end = pose;
                if (!drive (end, Primitive{Direction::forward, steer}, total - lead.size (), scenario, &line.primitives))
                    throw ModelInfeasible ("parallel line collides for fixed angle " + degrees_text (steer), steer);
                add_line (tree, scenario, std::move (line));
            }
        }
        return tree;
    }

    TargetTree build_target_tree (const Scenario &scenario)
    {
        switch (scenario.type)
        {
        case ParkingType::perpendicular:
            return build_perpendicular (scenario);
        case ParkingType::parallel:
            return build_parallel (scenario);
        case ParkingType::echelon:
            return build_echelon (scenario);
        }
        throw InvalidScenario ("unknown parking type");
    }

    Path backtrack_target (const TargetTree &tree, std::size_t node)
    {
        if (node >= tree.nodes.size () + tree.roots.size ())
            throw ContractViolation ("target node index out of range");
        // indices past the node list address the roots
        if (node >= tree.nodes.size ())
            return {tree.roots[node - tree.nodes.size ()], {}};

        std::vector<Primitive> prims;
        for (std::optional<std::size_t> at = node; at; at = tree.nodes[*at].parent)
        {
            const auto &edge = tree.nodes[*at].edge;
            for (auto it = edge.rbegin (); it != edge.rend (); ++it)
                prims.push_back (it->reversed ());
        }
        return {tree.nodes[node].pose, std::move (prims)};
    }

} // namespace parkrrt
