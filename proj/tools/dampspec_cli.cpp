// placeholder main, replaced once the engine modules are in
int main() { return 0; }
