// Subspace distance between two column spaces given as CSV matrices.
// Inputs must be half-orthogonal unless --orthonormalize is given; the
// mixed-dimension form is used automatically when column counts differ.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "facreg/error.hpp"
#include "facreg/io.hpp"
#include "facreg/matrix.hpp"
#include "facreg/metrics.hpp"

namespace {

int run(int argc, char** argv) {
  CLI::App app{"Distance between the column spaces of two bases"};
  std::string a_path, b_path;
  bool orthonormalize = false;
  app.add_option("--a", a_path, "first basis CSV")->required();
  app.add_option("--b", b_path, "second basis CSV")->required();
  app.add_flag("--orthonormalize", orthonormalize,
               "orthonormalize the inputs instead of rejecting them");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  facreg::Matrix a = facreg::read_matrix_csv(a_path);
  facreg::Matrix b = facreg::read_matrix_csv(b_path);
  if (orthonormalize) {
    a = facreg::orthonormal_basis(a);
    b = facreg::orthonormal_basis(b);
  }
  const facreg::SubspaceDistance d =
      a.cols() == b.cols() ? facreg::space_distance(a, b)
                           : facreg::space_distance_mixed(a, b);
  std::printf("%.10g\n", d.value);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const facreg::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const facreg::NumericError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
