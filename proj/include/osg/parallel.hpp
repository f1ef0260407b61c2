#pragma once

namespace osg {

// Serial runs the plain reference loops; parallel runs the OpenMP kernels.
enum class Backend { serial, parallel };

/// Applies OSG_THREADS (0 or unset = OpenMP default) to the OpenMP runtime.
void configure_threads_from_env();

int max_threads();

}  // namespace osg
