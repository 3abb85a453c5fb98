#include <parkrrt/scenario_io.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace parkrrt
{
    namespace
    {
        struct Token
        {
            std::string_view text;
            std::size_t column;
        };

        struct Line
        {
            std::size_t number;
            std::vector<Token> tokens;
        };

        std::vector<Line> tokenize (std::string_view text)
        {
            std::vector<Line> lines;
            std::size_t number = 0;
            while (!text.empty ())
            {
                ++number;
                const std::size_t eol = text.find ('\n');
                std::string_view raw = text.substr (0, eol);
                text = eol == std::string_view::npos ? std::string_view{} : text.substr (eol + 1);
                if (const auto hash = raw.find ('#'); hash != std::string_view::npos)
                    raw = raw.substr (0, hash);
                Line line{number, {}};
                std::size_t i = 0;
                while (i < raw.size ())
                {
                    while (i < raw.size () && std::isspace (static_cast<unsigned char> (raw[i])))
                        ++i;
                    const std::size_t start = i;
                    while (i < raw.size () && !std::isspace (static_cast<unsigned char> (raw[i])))
                        ++i;
                    if (i > start)
                        line.tokens.push_back ({raw.substr (start, i - start), start + 1});
                }
                if (!line.tokens.empty ())
                    lines.push_back (std::move (line));
            }
            return lines;
        }

        double parse_number (const Token &tok, std::size_t line)
        {
            double value = 0;
            const char *first = tok.text.data ();
            const char *last = first + tok.text.size ();
            const auto [ptr, ec] = std::from_chars (first, last, value);
            if (ec != std::errc () || ptr != last || !std::isfinite (value))
                throw ParseError ("expected a number, got '" + std::string (tok.text) + "'", line, tok.column);
            return value;
        }

        // Radians, or degrees with a "deg" suffix.
        double parse_angle (const Token &tok, std::size_t line)
        {
            constexpr std::string_view suffix = "deg";
            if (tok.text.size () > suffix.size () && tok.text.ends_with (suffix))
                return degrees (parse_number ({tok.text.substr (0, tok.text.size () - suffix.size ()), tok.column}, line));
            return parse_number (tok, line);
        }

        void expect_count (const Line &line, std::size_t min, std::size_t max)
        {
            const std::size_t args = line.tokens.size () - 1;
            if (args < min || args > max)
            {
                const std::size_t column = args > max ? line.tokens[max + 1].column : line.tokens.back ().column;
                throw ParseError ("'" + std::string (line.tokens[0].text) + "' takes " +
                                      (min == max ? std::to_string (min) : std::to_string (min) + " to " + std::to_string (max)) + " values",
                                  line.number, column);
            }
        }

        Polygon2d box_polygon (double cx, double cy, double heading, double length, double width)
        {
            return to_polygon (Box2d{{cx, cy}, length / 2, width / 2, heading});
        }

        std::string fmt (double v)
        {
            char buf[40];
            std::snprintf (buf, sizeof buf, "%.17g", v);
            return buf;
        }

        std::string fmt9 (double v)
        {
            char buf[40];
            std::snprintf (buf, sizeof buf, "%.9g", v);
            return buf;
        }

        std::string fmt3 (double v)
        {
            char buf[40];
            std::snprintf (buf, sizeof buf, "%.3f", v);
            std::string s = buf;
            if (s == "-0.000")
                s = "0.000";
            return s;
        }

        bool heading_within (double a, double b, double tol) { return std::abs (angle_difference (a, b)) <= tol; }
    } // namespace

    std::vector<Polygon2d> convex_decompose (const Polygon2d &polygon)
    {
        const auto &v = polygon.vertices;
        if (is_convex<double> (v))
            return {polygon};

        // ear clipping over vertex indices
        std::vector<std::size_t> ring (v.size ());
        for (std::size_t i = 0; i < ring.size (); ++i)
            ring[i] = i;
        std::vector<std::vector<std::size_t>> parts;
        auto is_ear = [&] (std::size_t k) {
            const std::size_t n = ring.size ();
            const Vector2d &a = v[ring[(k + n - 1) % n]], &b = v[ring[k]], &c = v[ring[(k + 1) % n]];
            if (cross<double> (b - a, c - b) <= 0)
                return false;
            const std::array<Vector2d, 3> tri{a, b, c};
            for (std::size_t j = 0; j < n; ++j)
            {
                const std::size_t idx = ring[j];
                if (idx == ring[(k + n - 1) % n] || idx == ring[k] || idx == ring[(k + 1) % n])
                    continue;
                if (contains<double> (tri, v[idx]))
                    return false;
            }
            return true;
        };
        while (ring.size () > 3)
        {
            bool clipped = false;
            for (std::size_t k = 0; k < ring.size (); ++k)
            {
                if (!is_ear (k))
                    continue;
                const std::size_t n = ring.size ();
                parts.push_back ({ring[(k + n - 1) % n], ring[k], ring[(k + 1) % n]});
                ring.erase (ring.begin () + static_cast<std::ptrdiff_t> (k));
                clipped = true;
                break;
            }
            if (!clipped)
                throw InvalidScenario ("obstacle polygon could not be triangulated");
        }
        parts.push_back (ring);

        // merge neighbours across shared diagonals while the union stays convex
        auto try_merge = [&] (const std::vector<std::size_t> &p, const std::vector<std::size_t> &q) -> std::optional<std::vector<std::size_t>> {
            for (std::size_t i = 0; i < p.size (); ++i)
            {
                const std::size_t a = p[i], b = p[(i + 1) % p.size ()];
                for (std::size_t j = 0; j < q.size (); ++j)
                {
                    if (q[j] != b || q[(j + 1) % q.size ()] != a)
                        continue;
                    std::vector<std::size_t> merged;
                    for (std::size_t k = 0; k < p.size (); ++k)
                        merged.push_back (p[(i + 1 + k) % p.size ()]); // b ... a
                    for (std::size_t k = 2; k < q.size (); ++k)
                        merged.push_back (q[(j + k) % q.size ()]); // after a, up to before b
                    std::vector<Vector2d> pts;
                    for (auto idx : merged)
                        pts.push_back (v[idx]);
                    if (is_convex<double> (pts))
                        return merged;
                    return std::nullopt;
                }
            }
            return std::nullopt;
        };
        for (bool changed = true; changed;)
        {
            changed = false;
            for (std::size_t i = 0; i < parts.size () && !changed; ++i)
                for (std::size_t j = i + 1; j < parts.size () && !changed; ++j)
                    if (auto merged = try_merge (parts[i], parts[j]))
                    {
                        parts[i] = std::move (*merged);
                        parts.erase (parts.begin () + static_cast<std::ptrdiff_t> (j));
                        changed = true;
                    }
        }

        std::vector<Polygon2d> out;
        for (const auto &p : parts)
        {
            Polygon2d poly;
            for (auto idx : p)
                poly.vertices.push_back (v[idx]);
            out.push_back (std::move (poly));
        }
        return out;
    }

    void validate (const Scenario &s)
    {
        if (!s.workspace.valid ())
            throw InvalidScenario ("degenerate workspace");
        if (const auto why = s.vehicle.violation (); !why.empty ())
            throw InvalidScenario ("invalid vehicle: " + why);
        for (const auto &o : s.obstacles)
            if (o.size () < 3 || !is_convex<double> (o.vertices) || !(signed_area (o) > 0))
                throw InvalidScenario ("obstacle part not convex counter-clockwise");
        if (!(s.slot.depth > 0 && s.slot.width > 0))
            throw InvalidScenario ("degenerate slot");
        if (!(s.slot.entry_angle > 0 && s.slot.entry_angle < std::numbers::pi))
            throw InvalidScenario ("slot entry_angle must lie in (0, pi)");
        if (!s.start.finite () || !s.goal.finite ())
            throw InvalidScenario ("non-finite pose");
        if (!(s.drive_out_length > 0))
            throw InvalidScenario ("drive_out_length must be positive");
        const double stations = s.drive_out_length / (kStationsPerLine * kPrimitiveLength);
        if (std::abs (stations - std::round (stations)) > 1e-9)
            throw InvalidScenario ("drive_out_length must be a multiple of 2 m");
        if (!pose_collision_free (s.start, s))
            throw InvalidScenario ("start in collision");
        if (!pose_collision_free (s.goal, s))
            throw InvalidScenario ("goal in collision");

        const Polygon2d slot = s.slot.polygon ();
        for (const auto &c : footprint (s.goal, s.vehicle).corners ())
            if (!contains (slot, c))
                throw InvalidScenario ("goal footprint outside slot");

        constexpr double tol = degrees (1.0);
        const double edge = s.slot.open_edge_heading ();
        const bool parallel = heading_within (s.goal.heading, edge, tol) || heading_within (s.goal.heading, edge + std::numbers::pi, tol);
        const bool perpendicular = heading_within (s.goal.heading, edge + std::numbers::pi / 2, tol) ||
                                   heading_within (s.goal.heading, edge - std::numbers::pi / 2, tol);
        const bool consistent = (s.type == ParkingType::parallel && parallel) || (s.type == ParkingType::perpendicular && perpendicular) ||
                                (s.type == ParkingType::echelon && !parallel && !perpendicular);
        if (!consistent)
            throw InvalidScenario ("parking type inconsistent with slot geometry");
    }

    Scenario load_scenario (std::string_view text)
    {
        Scenario s;
        std::map<std::string, std::size_t, std::less<>> seen;
        const auto lines = tokenize (text);

        auto pose_of = [] (const Line &l) {
            return Pose2d (parse_number (l.tokens[1], l.number), parse_number (l.tokens[2], l.number), parse_angle (l.tokens[3], l.number));
        };

        for (std::size_t i = 0; i < lines.size (); ++i)
        {
            const Line &l = lines[i];
            const std::string_view key = l.tokens[0].text;
            const bool block = key == "vehicle" || key == "obstacle";
            if (!block && key != "box" && seen.count (key))
                throw ParseError ("duplicate '" + std::string (key) + "'", l.number, 1);
            seen[std::string (key)] = l.number;

            if (key == "name")
            {
                expect_count (l, 1, 1);
                s.name = std::string (l.tokens[1].text);
            }
            else if (key == "type")
            {
                expect_count (l, 1, 1);
                const auto t = parse_parking_type (l.tokens[1].text);
                if (!t)
                    throw ParseError ("unknown parking type '" + std::string (l.tokens[1].text) + "'", l.number, l.tokens[1].column);
                s.type = *t;
            }
            else if (key == "workspace")
            {
                expect_count (l, 4, 4);
                s.workspace.min = {parse_number (l.tokens[1], l.number), parse_number (l.tokens[2], l.number)};
                s.workspace.max = {parse_number (l.tokens[3], l.number), parse_number (l.tokens[4], l.number)};
            }
            else if (key == "drive_out_length")
            {
                expect_count (l, 1, 1);
                s.drive_out_length = parse_number (l.tokens[1], l.number);
            }
            else if (key == "slot")
            {
                expect_count (l, 5, 6);
                s.slot.corner = pose_of (l);
                s.slot.depth = parse_number (l.tokens[4], l.number);
                s.slot.width = parse_number (l.tokens[5], l.number);
                if (l.tokens.size () == 7)
                    s.slot.entry_angle = parse_angle (l.tokens[6], l.number);
            }
            else if (key == "start" || key == "goal")
            {
                expect_count (l, 3, 3);
                (key == "start" ? s.start : s.goal) = pose_of (l);
            }
            else if (key == "box")
            {
                expect_count (l, 5, 5);
                double v[5];
                for (std::size_t k = 0; k < 5; ++k)
                    v[k] = k == 2 ? parse_angle (l.tokens[k + 1], l.number) : parse_number (l.tokens[k + 1], l.number);
                if (!(v[3] > 0 && v[4] > 0))
                    throw InvalidScenario ("box obstacle needs positive length and width (line " + std::to_string (l.number) + ")");
                s.obstacles.push_back (box_polygon (v[0], v[1], v[2], v[3], v[4]));
            }
            else if (key == "vehicle")
            {
                expect_count (l, 0, 0);
                for (++i; i < lines.size () && lines[i].tokens[0].text != "end"; ++i)
                {
                    const Line &f = lines[i];
                    expect_count (f, 1, 1);
                    const std::string_view field = f.tokens[0].text;
                    if (field == "wheelbase")
                        s.vehicle.wheelbase = parse_number (f.tokens[1], f.number);
                    else if (field == "body_length")
                        s.vehicle.body_length = parse_number (f.tokens[1], f.number);
                    else if (field == "body_width")
                        s.vehicle.body_width = parse_number (f.tokens[1], f.number);
                    else if (field == "rear_overhang")
                        s.vehicle.rear_overhang = parse_number (f.tokens[1], f.number);
                    else if (field == "max_steer")
                        s.vehicle.max_steer = parse_angle (f.tokens[1], f.number);
                    else if (field == "track_width")
                        s.vehicle.track_width = parse_number (f.tokens[1], f.number);
                    else
                        throw ParseError ("unknown vehicle field '" + std::string (field) + "'", f.number, f.tokens[0].column);
                }
                if (i >= lines.size ())
                    throw ParseError ("unterminated vehicle block", l.number, 1);
            }
            else if (key == "obstacle")
            {
                expect_count (l, 0, 0);
                Polygon2d poly;
                for (++i; i < lines.size () && lines[i].tokens[0].text != "end"; ++i)
                {
                    if (lines[i].tokens.size () != 2)
                        throw ParseError ("obstacle vertex takes 2 values", lines[i].number, lines[i].tokens.back ().column);
                    poly.vertices.emplace_back (parse_number (lines[i].tokens[0], lines[i].number), parse_number (lines[i].tokens[1], lines[i].number));
                }
                if (i >= lines.size ())
                    throw ParseError ("unterminated obstacle block", l.number, 1);
                if (poly.size () < 3)
                    throw InvalidScenario ("obstacle needs at least 3 vertices (line " + std::to_string (l.number) + ")");
                if (!is_simple<double> (poly.vertices))
                    throw InvalidScenario ("obstacle polygon not simple (line " + std::to_string (l.number) + ")");
                if (signed_area (poly) < 0)
                    std::reverse (poly.vertices.begin (), poly.vertices.end ());
                for (auto &part : convex_decompose (poly))
                    s.obstacles.push_back (std::move (part));
            }
            else
                throw ParseError ("unknown keyword '" + std::string (key) + "'", l.number, l.tokens[0].column);
        }

        for (const char *required : {"type", "workspace", "slot", "start", "goal"})
            if (!seen.count (required))
                throw InvalidScenario (std::string ("missing '") + required + "'");
        validate (s);
        return s;
    }

    Scenario load_scenario_file (const std::string &path) { return load_scenario (read_text_file (path)); }

    std::string write_scenario (const Scenario &s)
    {
        std::ostringstream out;
        if (!s.name.empty ())
            out << "name " << s.name << '\n';
        out << "type " << to_string (s.type) << '\n';
        out << "workspace " << fmt (s.workspace.min.x ()) << ' ' << fmt (s.workspace.min.y ()) << ' ' << fmt (s.workspace.max.x ()) << ' '
            << fmt (s.workspace.max.y ()) << '\n';
        out << "vehicle\n";
        out << "  wheelbase " << fmt (s.vehicle.wheelbase) << '\n';
        out << "  body_length " << fmt (s.vehicle.body_length) << '\n';
        out << "  body_width " << fmt (s.vehicle.body_width) << '\n';
        out << "  rear_overhang " << fmt (s.vehicle.rear_overhang) << '\n';
        out << "  max_steer " << fmt (s.vehicle.max_steer) << '\n';
        out << "  track_width " << fmt (s.vehicle.track_width) << '\n';
        out << "end\n";
        out << "drive_out_length " << fmt (s.drive_out_length) << '\n';
        out << "slot " << fmt (s.slot.corner.x ()) << ' ' << fmt (s.slot.corner.y ()) << ' ' << fmt (s.slot.corner.heading) << ' '
            << fmt (s.slot.depth) << ' ' << fmt (s.slot.width) << ' ' << fmt (s.slot.entry_angle) << '\n';
        out << "start " << fmt (s.start.x ()) << ' ' << fmt (s.start.y ()) << ' ' << fmt (s.start.heading) << '\n';
        out << "goal " << fmt (s.goal.x ()) << ' ' << fmt (s.goal.y ()) << ' ' << fmt (s.goal.heading) << '\n';
        for (const auto &o : s.obstacles)
        {
            out << "obstacle\n";
            for (const auto &v : o.vertices)
                out << "  " << fmt (v.x ()) << ' ' << fmt (v.y ()) << '\n';
            out << "end\n";
        }
        return out.str ();
    }

    PathRecord to_record (const Trajectory &trajectory, const Vehicle &vehicle)
    {
        PathRecord record;
        for (const auto &leg : trajectory)
        {
            if (leg.empty ())
                continue;
            Pose2d pose = leg.start;
            record.rows.push_back ({record.rows.size (), pose.x (), pose.y (), pose.heading, 0.0, 0});
            for (const auto &m : leg.primitives)
            {
                pose = integrate (pose, m, vehicle);
                record.rows.push_back ({record.rows.size (), pose.x (), pose.y (), pose.heading, m.steer, sign (m.direction)});
            }
        }
        return record;
    }

    Trajectory to_trajectory (const PathRecord &record, const Vehicle &vehicle)
    {
        Trajectory out;
        for (const auto &row : record.rows)
        {
            if (row.direction == 0)
            {
                out.push_back ({Pose2d (row.x, row.y, row.heading), {}});
                continue;
            }
            if (out.empty ())
                throw ContractViolation ("path record must start with a leg-start row");
            const double steer = std::clamp (row.steer, -vehicle.max_steer, vehicle.max_steer);
            out.back ().primitives.push_back ({row.direction > 0 ? Direction::forward : Direction::backward, steer});
        }
        return out;
    }

    std::string write_path (const PathRecord &record)
    {
        std::string out (kPathHeader);
        out += '\n';
        for (const auto &r : record.rows)
        {
            out += std::to_string (r.index) + ',' + fmt9 (r.x) + ',' + fmt9 (r.y) + ',' + fmt9 (r.heading) + ',' + fmt9 (r.steer) + ',' +
                   std::to_string (r.direction) + '\n';
        }
        return out;
    }

    PathRecord read_path (std::string_view text, const Vehicle &vehicle)
    {
        PathRecord record;
        std::size_t line_no = 0;
        bool header = false;
        while (!text.empty ())
        {
            const std::size_t eol = text.find ('\n');
            std::string_view line = text.substr (0, eol);
            text = eol == std::string_view::npos ? std::string_view{} : text.substr (eol + 1);
            ++line_no;
            if (!line.empty () && line.back () == '\r')
                line.remove_suffix (1);
            if (!header)
            {
                if (line != kPathHeader)
                    throw ParseError ("expected header '" + std::string (kPathHeader) + "'", line_no, 1);
                header = true;
                continue;
            }
            if (line.empty ())
                continue;

            const std::size_t row_no = record.rows.size ();
            std::vector<std::string_view> cells;
            std::size_t column = 1;
            std::vector<std::size_t> columns;
            for (std::size_t pos = 0;;)
            {
                const std::size_t comma = line.find (',', pos);
                cells.push_back (line.substr (pos, comma - pos));
                columns.push_back (column + pos);
                if (comma == std::string_view::npos)
                    break;
                pos = comma + 1;
            }
            if (cells.size () != 6)
                throw ParseError ("row " + std::to_string (row_no) + ": expected 6 fields", line_no, 1);

            PathRow row;
            double vals[6];
            for (std::size_t k = 0; k < 6; ++k)
                vals[k] = parse_number ({cells[k], columns[k]}, line_no);
            if (vals[0] != static_cast<double> (row_no))
                throw ParseError ("row " + std::to_string (row_no) + ": index out of sequence", line_no, columns[0]);
            if (vals[5] != 0 && vals[5] != 1 && vals[5] != -1)
                throw ParseError ("row " + std::to_string (row_no) + ": direction must be -1, 0 or 1", line_no, columns[5]);
            row.index = row_no;
            row.x = vals[1];
            row.y = vals[2];
            row.heading = vals[3];
            row.steer = vals[4];
            row.direction = static_cast<int> (vals[5]);

            if (row.direction == 0 ? row.steer != 0 : std::abs (row.steer) > vehicle.max_steer + kPathReplayTolerance)
                throw ParseError ("row " + std::to_string (row_no) + ": steer out of range", line_no, columns[4]);
            if (row.direction != 0)
            {
                if (record.rows.empty ())
                    throw ParseError ("row 0 must be a leg start (direction 0)", line_no, columns[5]);
                const PathRow &prev = record.rows.back ();
                const double steer = std::clamp (row.steer, -vehicle.max_steer, vehicle.max_steer);
                const Pose2d expected =
                    integrate (Pose2d (prev.x, prev.y, prev.heading), {row.direction > 0 ? Direction::forward : Direction::backward, steer}, vehicle);
                if (std::abs (expected.x () - row.x) > kPathReplayTolerance || std::abs (expected.y () - row.y) > kPathReplayTolerance ||
                    std::abs (angle_difference (expected.heading, row.heading)) > kPathReplayTolerance)
                    throw ParseError ("row " + std::to_string (row_no) + ": pose inconsistent with the previous row under integrate", line_no, 1);
            }
            record.rows.push_back (row);
        }
        if (!header)
            throw ParseError ("missing header", 1, 1);
        return record;
    }

    std::string render_svg (const Scenario &scenario, const RenderLayers &layers)
    {
        const Workspace2d &ws = scenario.workspace;
        const double w = ws.max.x () - ws.min.x ();
        const double h = ws.max.y () - ws.min.y ();
        // world y grows up, SVG y grows down
        auto px = [&] (const Vector2d &p) { return fmt3 (p.x ()) + ',' + fmt3 (ws.max.y () + ws.min.y () - p.y ()); };
        auto points = [&] (const auto &pts) {
            std::string s;
            for (const auto &p : pts)
                s += (s.empty () ? "" : " ") + px (p);
            return s;
        };

        std::ostringstream out;
        out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt3 (w * 40) << "\" height=\"" << fmt3 (h * 40)
            << "\" viewBox=\"" << fmt3 (ws.min.x ()) << ' ' << fmt3 (ws.min.y ()) << ' ' << fmt3 (w) << ' ' << fmt3 (h) << "\">\n";
        out << "<rect x=\"" << fmt3 (ws.min.x ()) << "\" y=\"" << fmt3 (ws.min.y ()) << "\" width=\"" << fmt3 (w) << "\" height=\"" << fmt3 (h)
            << "\" fill=\"#ffffff\" stroke=\"#000000\" stroke-width=\"0.05\"/>\n";

        out << "<g id=\"obstacles\" fill=\"#9e9e9e\" stroke=\"#616161\" stroke-width=\"0.02\">\n";
        for (const auto &o : scenario.obstacles)
            out << "<polygon points=\"" << points (o.vertices) << "\"/>\n";
        out << "</g>\n";
        out << "<polygon id=\"slot\" points=\"" << points (scenario.slot.polygon ().vertices)
            << "\" fill=\"none\" stroke=\"#ff9800\" stroke-width=\"0.06\" stroke-dasharray=\"0.2,0.1\"/>\n";

        auto arc_polyline = [&] (const Pose2d &from, const std::vector<Primitive> &prims) {
            std::vector<Vector2d> pts{from.position};
            Pose2d p = from;
            for (const auto &m : prims)
            {
                pts.push_back (integrate (p, m, scenario.vehicle).position);
                p = integrate (p, m, scenario.vehicle);
            }
            return points (pts);
        };

        if (layers.search_tree)
        {
            out << "<g id=\"search-tree\" fill=\"none\" stroke=\"#b0bec5\" stroke-width=\"0.02\">\n";
            const double flip = ws.max.y () + ws.min.y ();
            for (const auto &n : layers.search_tree->nodes ())
                if (n.parent)
                {
                    const Vector2d &a = (*layers.search_tree)[*n.parent].pose.position;
                    const Vector2d &b = n.pose.position;
                    out << "<line x1=\"" << fmt3 (a.x ()) << "\" y1=\"" << fmt3 (flip - a.y ()) << "\" x2=\"" << fmt3 (b.x ()) << "\" y2=\""
                        << fmt3 (flip - b.y ()) << "\"/>\n";
                }
            out << "</g>\n";
        }
        if (layers.target_tree)
        {
            const TargetTree &t = *layers.target_tree;
            out << "<g id=\"target-tree\" fill=\"none\" stroke=\"#66bb6a\" stroke-width=\"0.02\">\n";
            for (const auto &n : t.nodes)
            {
                const Pose2d from = n.parent ? t.nodes[*n.parent].pose : t.roots[n.root];
                out << "<polyline points=\"" << arc_polyline (from, n.edge) << "\"/>\n";
            }
            out << "</g>\n";
        }
        if (layers.path)
        {
            out << "<g id=\"path\" fill=\"none\" stroke-width=\"0.08\" stroke-linecap=\"round\">\n";
            for (const auto &leg : *layers.path)
            {
                Pose2d p = leg.start;
                std::size_t i = 0;
                while (i < leg.primitives.size ())
                {
                    // one polyline per run of equal direction
                    const Direction d = leg.primitives[i].direction;
                    std::vector<Vector2d> pts{p.position};
                    for (; i < leg.primitives.size () && leg.primitives[i].direction == d; ++i)
                    {
                        p = integrate (p, leg.primitives[i], scenario.vehicle);
                        pts.push_back (p.position);
                    }
                    out << "<polyline stroke=\"" << (d == Direction::forward ? "#1e88e5" : "#e53935") << "\" points=\"" << points (pts) << "\"/>\n";
                }
            }
            out << "</g>\n";
        }

        auto car = [&] (const Pose2d &pose, const char *id, const char *colour) {
            const auto c = footprint (pose, scenario.vehicle).corners ();
            out << "<polygon id=\"" << id << "\" points=\"" << points (c) << "\" fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"0.05\"/>\n";
        };
        car (scenario.start, "start", "#3949ab");
        car (scenario.goal, "goal", "#c62828");
        out << "</svg>\n";
        return out.str ();
    }

    std::string read_text_file (const std::string &path)
    {
        std::ifstream in (path, std::ios::binary);
        if (!in)
            throw Error ("cannot open '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf ();
        return ss.str ();
    }

    void write_text_file (const std::string &path, std::string_view text)
    {
        std::ofstream out (path, std::ios::binary);
        if (!out)
            throw Error ("cannot write '" + path + "'");
        out << text;
        if (!out)
            throw Error ("write failed for '" + path + "'");
    }

} // namespace parkrrt
