#pragma once
/**
 * @file errors.hpp
 * @brief Exception hierarchy shared by every parkrrt module.
 */

#include <cstddef>
#include <stdexcept>
#include <string>

namespace parkrrt
{
    /// Root of all parkrrt errors.
    class Error : public std::runtime_error
    {
      public:
        using std::runtime_error::runtime_error;
    };

    /// A precondition stated by an operation was not met by the caller.
    class ContractViolation : public Error
    {
      public:
        using Error::Error;
    };

    /// Scenario text or values failed validation; `what()` names the failed check.
    class InvalidScenario : public Error
    {
      public:
        using Error::Error;
    };

    /// Syntax error in a scenario, path or config file.
    class ParseError : public Error
    {
      public:
        ParseError (const std::string &message, std::size_t line, std::size_t column = 0)
            : Error (format (message, line, column)), line_ (line), column_ (column)
        {
        }

        std::size_t line () const noexcept { return line_; }
        std::size_t column () const noexcept { return column_; }

      private:
        static std::string format (const std::string &message, std::size_t line, std::size_t column)
        {
            std::string out = "line " + std::to_string (line);
            if (column > 0)
                out += ", column " + std::to_string (column);
            return out + ": " + message;
        }

        std::size_t line_;
        std::size_t column_;
    };

    /// A drive-out line of the target-tree model cannot be made collision free.
    class ModelInfeasible : public Error
    {
      public:
        ModelInfeasible (const std::string &message, double steer)
            : Error (message), steer_ (steer)
        {
        }

        /// Fixed steering angle (radians) of the offending line.
        double steer () const noexcept { return steer_; }

      private:
        double steer_;
    };

    /// Free-space sampling kept landing inside obstacles.
    class WorkspaceFull : public Error
    {
      public:
        using Error::Error;
    };

    /// The planner exhausted its batch budget.
    class NoPathFound : public Error
    {
      public:
        NoPathFound (const std::string &message, double best_distance, std::size_t steps_used)
            : Error (message), best_distance_ (best_distance), steps_used_ (steps_used)
        {
        }

        /// Smallest configuration distance reached between the search tree and any target.
        double best_distance () const noexcept { return best_distance_; }
        std::size_t steps_used () const noexcept { return steps_used_; }

      private:
        double best_distance_;
        std::size_t steps_used_;
    };

} // namespace parkrrt
