#pragma once

namespace maxent {

/// Name of the environment variable that selects the worker count.
inline constexpr const char* kWorkerEnv = "MAXENT_NUM_THREADS";

int worker_count();
void set_worker_count(int n);
/// Applies kWorkerEnv when set; returns the count in effect afterwards.
/// Throws ConfigError if the value is not a positive integer.
int configure_workers_from_env();

}  // namespace maxent
