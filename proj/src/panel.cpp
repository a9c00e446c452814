#include "facreg/panel.hpp"

#include "facreg/error.hpp"

namespace facreg {

void Panel::validate() const {
  if (data.rows() < 1) throw ShapeMismatch("Panel: needs at least one series");
  if (data.cols() < 2)
    throw ShapeMismatch("Panel: needs at least two time points");
  if (!data.allFinite()) throw NonFinite("Panel: non-finite entries");
  if (!series_labels.empty() &&
      series_labels.size() != static_cast<size_t>(data.rows()))
    throw ShapeMismatch("Panel: series label count mismatch");
  if (!time_labels.empty() &&
      time_labels.size() != static_cast<size_t>(data.cols()))
    throw ShapeMismatch("Panel: time label count mismatch");
}

std::pair<Panel, Vector> center_rows(const Panel& panel) {
  Vector means = panel.data.rowwise().mean();
  Panel centered = panel;
  centered.data.colwise() -= means;
  return {std::move(centered), std::move(means)};
}

const char* to_string(Design d) {
  switch (d) {
    case Design::stationary: return "stationary";
    case Design::endogenous: return "endogenous";
    case Design::nonstationary: return "nonstationary";
    case Design::nonlinear: return "nonlinear";
  }
  return "?";
}

const char* to_string(Method m) {
  switch (m) {
    case Method::ols: return "ols";
    case Method::iv: return "iv";
    case Method::sieve: return "sieve";
    case Method::known_d: return "known_d";
    case Method::none: return "none";
  }
  return "?";
}

}  // namespace facreg
