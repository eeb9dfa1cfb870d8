namespace cleave {
}
