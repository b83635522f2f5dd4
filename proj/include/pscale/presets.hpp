#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pscale {

/// Names of the bundled benchmark networks (googlenet, resnet18, mobilenet,
/// alphagozero).
std::vector<std::string> preset_names();

/// Raw CSV text of a bundled preset, or nullopt for an unknown name.
std::optional<std::string_view> preset_csv(std::string_view name);

/// Published digital/analog/photonic comparison constants (CSV).
std::string_view arch_profiles_csv();

}  // namespace pscale
