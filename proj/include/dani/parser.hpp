#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "dani/polynomial.hpp"

namespace dani {

/// Parses an arithmetic expression into an exact polynomial.
///
/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := ['-'] atom ['^' NAT]
///   atom   := NAT ['/' NAT] | VAR | '(' expr ')'
/// '^' binds tighter than '*' binds tighter than '+'/'-'; unary minus binds
/// tighter than '+' but looser than '^'. Whitespace is insignificant.
/// Variable names match [A-Za-z][A-Za-z0-9]*.
Polynomial parse_poly(std::string_view text,
                      const std::shared_ptr<const Universe>& universe,
                      const FieldSpec& field);

/// Canonical printing; parse_poly(print_poly(f)) == f.
std::string print_poly(const Polynomial& f);

enum class Family { danielewski, asanuma };

std::string family_name(Family f);

/// Validated presentation of a quotient ring read from a config file.
struct RingConfig {
    FieldSpec field;
    Family family = Family::danielewski;
    int m = 0;
    std::vector<int> r;
    /// F over T1..Tm,V (danielewski) or H over X1..Xm,Z,T (asanuma).
    Polynomial defining;
    std::optional<Polynomial> g1, g2; // optional cofactors in the same variables

    /// The uppercase presentation universe the defining polynomial lives in.
    std::shared_ptr<const Universe> poly_universe() const { return defining.universe(); }
};

/// The uppercase variable universe for a family: T1..Tm,V or X1..Xm,Z,T.
std::shared_ptr<const Universe> presentation_universe(Family family, int m);

/// Key-value config text: one `key = value` per line, '#' comments.
/// Keys: field, family, m, r, F|H, g1, g2.
RingConfig parse_ring_config(std::string_view text, const std::string& origin = "<config>");

RingConfig load_ring_config(const std::filesystem::path& path);

/// Programmatic construction with the same validation as the file loader.
RingConfig make_ring_config(FieldSpec field, Family family, std::vector<int> r,
                            std::string_view defining_text,
                            std::optional<std::string> g1_text = std::nullopt,
                            std::optional<std::string> g2_text = std::nullopt);

} // namespace dani
