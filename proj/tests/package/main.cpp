#include <nearcloak/mie.hpp>

int main() {
  const auto w = nearcloak::mie::WaveParams::along_x(nearcloak::Dimension::two);
  return nearcloak::mie::coeffs_sound_hard(nearcloak::Dimension::two, w, 0.1).n_max > 0 ? 0 : 1;
}
